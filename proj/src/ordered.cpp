#include "subkit/ordered.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace subkit {

OrderedDiagram OrderedDiagram::stationary(Substitution generator) {
    if (!generator.square())
        throw std::invalid_argument("stationary ordered diagram needs a square substitution");
    OrderedDiagram d;
    d.stationary_ = true;
    d.gen_ = std::move(generator);
    return d;
}

OrderedDiagram OrderedDiagram::chain(std::vector<Substitution> steps) {
    if (steps.empty())
        throw std::invalid_argument("ordered chain needs at least one step");
    for (size_t k = 0; k + 1 < steps.size(); ++k)
        if (steps[k + 1].codomain() != steps[k].domain())
            throw std::invalid_argument("ordered chain steps do not compose");
    OrderedDiagram d;
    d.stationary_ = false;
    d.steps_ = std::move(steps);
    return d;
}

const Substitution& OrderedDiagram::generator() const {
    if (!stationary_)
        throw std::domain_error("finite ordered diagram has no generator");
    return gen_;
}

std::optional<int> OrderedDiagram::depth() const {
    if (stationary_) return std::nullopt;
    return static_cast<int>(steps_.size());
}

const Substitution& OrderedDiagram::step(int k) const {
    if (k < 0) throw std::out_of_range("step index negative");
    if (stationary_) return gen_;
    if (k >= static_cast<int>(steps_.size()))
        throw std::out_of_range("step beyond diagram depth");
    return steps_[k];
}

int OrderedDiagram::level_size(int level) const {
    if (level < 0) throw std::out_of_range("level negative");
    if (stationary_) return gen_.domain().size();
    if (level == 0) return steps_[0].codomain().size();
    if (level <= static_cast<int>(steps_.size()))
        return steps_[level - 1].domain().size();
    throw std::out_of_range("level beyond diagram depth");
}

const Word& OrderedDiagram::order_word(int level, int vertex) const {
    if (level < 1) throw std::out_of_range("order words exist at levels >= 1");
    return step(level - 1).image(vertex);
}

std::vector<mpz_class> OrderedDiagram::labels(int level) const {
    std::vector<mpz_class> d(level_size(0), mpz_class(1));
    for (int k = 0; k < level; ++k)
        d = abelianize(step(k)).apply(d);
    return d;
}

BratteliDiagram OrderedDiagram::base() const {
    if (stationary_) return stationary_diagram(abelianize(gen_));
    std::vector<ExactMatrix> incid;
    incid.reserve(steps_.size());
    for (const auto& s : steps_) incid.push_back(abelianize(s).transpose());
    return BratteliDiagram::finite(std::move(incid));
}

OrderedDiagram ordered_from_substitution(const Substitution& s) {
    return OrderedDiagram::stationary(s);
}

OrderedDiagram ordered_telescope(const OrderedDiagram& d, const std::vector<int>& cut_levels) {
    if (cut_levels.size() < 2)
        throw std::domain_error("telescope needs at least two cut levels");
    if (cut_levels.front() != 0)
        throw std::domain_error("telescope cuts must start at the base level");
    for (size_t i = 0; i + 1 < cut_levels.size(); ++i)
        if (cut_levels[i] >= cut_levels[i + 1])
            throw std::domain_error("telescope cuts must be strictly increasing");
    if (auto dep = d.depth(); dep && cut_levels.back() > *dep)
        throw std::domain_error("telescope cut beyond diagram depth");

    if (d.stationary()) {
        bool constant = true;
        int stride = cut_levels[1] - cut_levels[0];
        for (size_t i = 0; i + 1 < cut_levels.size(); ++i)
            if (cut_levels[i + 1] - cut_levels[i] != stride) constant = false;
        if (constant)
            return OrderedDiagram::stationary(power(d.generator(), stride));
    }
    std::vector<Substitution> steps;
    for (size_t i = 0; i + 1 < cut_levels.size(); ++i) {
        // composite from level cut[i+1] down to cut[i]: lowest step outermost
        Substitution comp = d.step(cut_levels[i + 1] - 1);
        for (int k = cut_levels[i + 1] - 2; k >= cut_levels[i]; --k)
            comp = compose(d.step(k), comp);
        steps.push_back(std::move(comp));
    }
    return OrderedDiagram::chain(std::move(steps));
}

PathCounts path_counts(const Substitution& s) {
    if (!s.square())
        throw std::domain_error("path_counts requires a square substitution");
    PathCounts pc;
    pc.max_cycle_vertices = cycle_vertices(last_letter_map(s));
    pc.min_cycle_vertices = cycle_vertices(first_letter_map(s));
    pc.max_count = static_cast<int>(pc.max_cycle_vertices.size());
    pc.min_count = static_cast<int>(pc.min_cycle_vertices.size());
    return pc;
}

bool max_min_disjoint(const Substitution& s) {
    if (!s.square())
        throw std::domain_error("max_min_disjoint requires a square substitution");
    bool some_long_image = false;
    for (const auto& w : s.images())
        if (w.length() > 1) some_long_image = true;
    if (!some_long_image)
        throw std::domain_error("max_min_disjoint requires an image longer than one letter");
    if (!is_primitive(abelianize(s)).primitive)
        throw std::domain_error("max_min_disjoint requires a primitive substitution");
    // a path is both maximal and minimal iff it eventually runs along a cycle
    // of letters whose images are single letters
    auto last = last_letter_map(s);
    for (int c : cycle_vertices(last)) {
        bool all_single = true;
        int x = c;
        do {
            if (s.image(x).length() != 1) { all_single = false; break; }
            x = last[x];
        } while (x != c);
        if (all_single) return false;
    }
    return true;
}

int FinitePath::top_vertex() const {
    if (edges_.empty()) throw std::domain_error("empty path has no top vertex");
    return edges_.back().range_vertex;
}

void validate_path(const OrderedDiagram& d, const FinitePath& p) {
    if (p.length() == 0) throw std::invalid_argument("path must have at least one edge");
    for (int i = 0; i < p.length(); ++i) {
        const auto& e = p.edges()[i];
        int level = i + 1;
        if (e.range_vertex < 0 || e.range_vertex >= d.level_size(level))
            throw std::invalid_argument("path vertex out of range");
        const Word& w = d.order_word(level, e.range_vertex);
        if (e.rank < 0 || e.rank >= w.length())
            throw std::invalid_argument("path edge rank out of range");
        if (i > 0) {
            const auto& below = p.edges()[i - 1];
            if (w.at(e.rank) != below.range_vertex)
                throw std::invalid_argument("path edges do not chain");
        }
    }
}

int path_source(const OrderedDiagram& d, const FinitePath& p) {
    validate_path(d, p);
    const auto& e = p.edges()[0];
    return d.order_word(1, e.range_vertex).at(e.rank);
}

namespace {

FinitePath extreme_path(const OrderedDiagram& d, int length, int top_vertex, bool maximal) {
    if (length < 1) throw std::domain_error("path length must be positive");
    if (top_vertex < 0 || top_vertex >= d.level_size(length))
        throw std::invalid_argument("top vertex out of range");
    std::vector<PathEdge> edges(length);
    int v = top_vertex;
    for (int level = length; level >= 1; --level) {
        const Word& w = d.order_word(level, v);
        int rank = maximal ? w.length() - 1 : 0;
        edges[level - 1] = {v, rank};
        v = w.at(rank);
    }
    return FinitePath(std::move(edges));
}

} // namespace

FinitePath minimal_path_into(const OrderedDiagram& d, int length, int top_vertex) {
    return extreme_path(d, length, top_vertex, false);
}

FinitePath maximal_path_into(const OrderedDiagram& d, int length, int top_vertex) {
    return extreme_path(d, length, top_vertex, true);
}

std::optional<FinitePath> vershik_successor(const OrderedDiagram& d, const FinitePath& p) {
    validate_path(d, p);
    auto edges = p.edges();
    for (int i = 0; i < p.length(); ++i) {
        const Word& w = d.order_word(i + 1, edges[i].range_vertex);
        if (edges[i].rank + 1 >= w.length()) continue;
        edges[i].rank += 1;
        // everything below resets to the minimal path into the new source
        int v = w.at(edges[i].rank);
        for (int j = i - 1; j >= 0; --j) {
            edges[j] = {v, 0};
            v = d.order_word(j + 1, v).at(0);
        }
        return FinitePath(std::move(edges));
    }
    return std::nullopt;
}

int compare_paths(const OrderedDiagram& d, const FinitePath& a, const FinitePath& b) {
    validate_path(d, a);
    validate_path(d, b);
    if (a.length() != b.length() || a.top_vertex() != b.top_vertex())
        throw std::domain_error("paths are comparable only into a common vertex");
    for (int i = a.length() - 1; i >= 0; --i) {
        if (a.edges()[i].range_vertex != b.edges()[i].range_vertex) {
            // ranks above already matched, so the range vertices must agree
            throw std::logic_error("paths with equal upper edges must share vertices");
        }
        if (a.edges()[i].rank != b.edges()[i].rank)
            return a.edges()[i].rank < b.edges()[i].rank ? -1 : 1;
    }
    return 0;
}

std::string taf_description(const OrderedDiagram& d, int depth) {
    if (depth < 1) throw std::domain_error("taf_description needs depth >= 1");
    std::ostringstream os;
    auto letter_name = [&](int level, int v) {
        const Alphabet& a = level == 0
                                ? (d.stationary() ? d.generator().domain() : d.step(0).codomain())
                                : d.step(level - 1).domain();
        return a.letter(v);
    };
    for (int level = 0; level <= depth; ++level) {
        auto labs = d.labels(level);
        os << "level " << level << ": ";
        for (size_t i = 0; i < labs.size(); ++i) {
            if (i) os << " ⊕ ";
            os << "T_" << labs[i].get_str() << "(" << letter_name(level, static_cast<int>(i))
               << ")";
        }
        if (level >= 1) {
            os << "   [";
            int sz = d.level_size(level);
            for (int v = 0; v < sz; ++v) {
                if (v) os << ", ";
                os << letter_name(level, v) << " ↦ (";
                const Word& w = d.order_word(level, v);
                for (int i = 0; i < w.length(); ++i) {
                    if (i) os << ", ";
                    os << letter_name(level - 1, w.at(i));
                }
                os << ")";
            }
            os << "]";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace subkit
