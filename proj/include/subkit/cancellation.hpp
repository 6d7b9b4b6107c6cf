#pragma once

#include <atomic>
#include <stdexcept>

namespace subkit {

struct CancelledError : std::runtime_error {
    CancelledError() : std::runtime_error("operation cancelled") {}
};

// Cooperative cancellation token. Long-running decision procedures poll it
// and throw CancelledError once the flag is set. A default token never fires.
class Cancellation {
public:
    Cancellation() = default;
    explicit Cancellation(const std::atomic<bool>* flag) : flag_(flag) {}

    bool requested() const { return flag_ && flag_->load(std::memory_order_relaxed); }
    void check() const {
        if (requested()) throw CancelledError();
    }

private:
    const std::atomic<bool>* flag_ = nullptr;
};

} // namespace subkit
