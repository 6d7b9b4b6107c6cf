#include "subkit/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subkit {

using nlohmann::json;

namespace {

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

mpz_class json_to_mpz(const json& j) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return mpz_class(j.get<std::string>());
    throw std::invalid_argument("expected an integer or integer string");
}

json matrix_to_json(const ExactMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(mpz_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ExactMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix JSON must be a nonempty array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    ExactMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw std::invalid_argument("ragged matrix JSON");
        for (int c = 0; c < cols; ++c) m(i, c) = json_to_mpz(j[i][c]);
    }
    return m;
}

json labels_to_json(const std::vector<mpz_class>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(mpz_to_json(x));
    return out;
}

} // namespace

Substitution parse_substitution(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::optional<std::vector<std::string>> letters, letters_from, letters_to;
    std::vector<std::pair<std::string, std::vector<std::string>>> rules;
    bool headered = false;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trimmed(line);
        if (line.empty()) continue;
        auto starts = [&](const char* p) { return line.rfind(p, 0) == 0; };
        if (starts("letters_from:")) {
            letters_from = tokens(line.substr(13));
            headered = true;
            continue;
        }
        if (starts("letters_to:")) {
            letters_to = tokens(line.substr(11));
            headered = true;
            continue;
        }
        if (starts("letters:")) {
            letters = tokens(line.substr(8));
            headered = true;
            continue;
        }
        auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw std::invalid_argument("substitution rule needs '->': " + line);
        std::string lhs = trimmed(line.substr(0, arrow));
        std::string rhs = trimmed(line.substr(arrow + 2));
        if (lhs.empty()) throw std::invalid_argument("substitution rule without source letter");
        std::vector<std::string> image;
        if (headered) {
            image = tokens(rhs);
        } else {
            for (char c : rhs)
                if (!isspace(static_cast<unsigned char>(c)))
                    image.emplace_back(1, c);
        }
        if (image.empty())
            throw std::invalid_argument("substitution images must be nonempty");
        rules.emplace_back(lhs, std::move(image));
    }
    if (rules.empty()) throw std::invalid_argument("no substitution rules found");

    std::vector<std::string> dom_letters, cod_letters;
    bool rectangular = letters_from.has_value() || letters_to.has_value();
    if (rectangular) {
        if (!letters_from || !letters_to)
            throw std::invalid_argument(
                "rectangular substitutions need both letters_from: and letters_to:");
        dom_letters = *letters_from;
        cod_letters = *letters_to;
    } else if (letters) {
        dom_letters = cod_letters = *letters;
    } else {
        for (const auto& [lhs, img] : rules)
            dom_letters.push_back(lhs);
        cod_letters = dom_letters;
    }
    Alphabet domain(dom_letters);
    Alphabet codomain = rectangular ? Alphabet(cod_letters)
                                    : (letters ? Alphabet(cod_letters) : domain);

    bool single_char_codomain = true;
    for (const auto& l : codomain.letters())
        if (l.size() > 1) single_char_codomain = false;

    std::vector<std::optional<Word>> images(domain.size());
    for (const auto& [lhs, img] : rules) {
        int l = domain.index_of(lhs);
        if (l < 0) throw std::invalid_argument("rule for unknown letter '" + lhs + "'");
        if (images[l]) throw std::invalid_argument("duplicate rule for letter '" + lhs + "'");
        std::vector<int32_t> syms;
        for (const auto& tok : img) {
            int idx = codomain.index_of(tok);
            if (idx >= 0) {
                syms.push_back(idx);
                continue;
            }
            if (!single_char_codomain)
                throw std::invalid_argument("unknown image letter '" + tok + "'");
            // contiguous single-character letters
            for (char c : tok) {
                int ci = codomain.index_of(std::string(1, c));
                if (ci < 0)
                    throw std::invalid_argument("unknown image letter '" +
                                                std::string(1, c) + "'");
                syms.push_back(ci);
            }
        }
        images[l] = Word(codomain, std::move(syms));
    }
    std::vector<Word> final_images;
    for (int l = 0; l < domain.size(); ++l) {
        if (!images[l])
            throw std::invalid_argument("missing rule for letter '" + domain.letter(l) + "'");
        final_images.push_back(std::move(*images[l]));
    }
    return Substitution(domain, codomain, std::move(final_images));
}

std::string write_substitution(const Substitution& s) {
    std::ostringstream os;
    bool multi = false;
    for (const auto& l : s.domain().letters())
        if (l.size() > 1) multi = true;
    for (const auto& l : s.codomain().letters())
        if (l.size() > 1) multi = true;
    if (!s.square()) {
        os << "letters_from:";
        for (const auto& l : s.domain().letters()) os << " " << l;
        os << "\nletters_to:";
        for (const auto& l : s.codomain().letters()) os << " " << l;
        os << "\n";
    } else {
        os << "letters:";
        for (const auto& l : s.domain().letters()) os << " " << l;
        os << "\n";
    }
    bool spaced = multi || !s.square();
    for (int l = 0; l < s.domain().size(); ++l) {
        os << s.domain().letter(l) << " -> ";
        const Word& w = s.image(l);
        for (int i = 0; i < w.length(); ++i) {
            if (spaced && i) os << " ";
            os << s.codomain().letter(w.at(i));
        }
        os << "\n";
    }
    return os.str();
}

ExactMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::vector<mpz_class>> rows;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trimmed(line);
        if (line.empty()) continue;
        std::vector<mpz_class> row;
        for (const auto& t : tokens(line)) row.emplace_back(t);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("no matrix rows found");
    size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols) throw std::invalid_argument("ragged matrix rows");
    ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

std::string write_matrix(const ExactMatrix& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << m(i, j).get_str();
        }
        os << "\n";
    }
    return os.str();
}

std::string diagram_to_json(const BratteliDiagram& d, int depth) {
    json j;
    j["stationary"] = d.stationary();
    if (d.stationary()) j["generator"] = matrix_to_json(d.generator());
    int n = d.stationary() ? depth : std::min(depth, *d.depth());
    j["depth"] = n;
    json labels = json::array();
    for (int k = 0; k <= n; ++k) labels.push_back(labels_to_json(d.labels(k)));
    j["labels"] = std::move(labels);
    json trans = json::array();
    for (int k = 0; k < n; ++k) trans.push_back(matrix_to_json(d.transition(k)));
    j["transitions"] = std::move(trans);
    return j.dump(2);
}

BratteliDiagram diagram_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("stationary").get<bool>())
        return stationary_diagram(matrix_from_json(j.at("generator")));
    std::vector<ExactMatrix> trans;
    for (const auto& t : j.at("transitions")) trans.push_back(matrix_from_json(t));
    return BratteliDiagram::finite(std::move(trans));
}

std::string ordered_to_json(const OrderedDiagram& d, int depth) {
    json j = json::parse(diagram_to_json(d.base(), depth));
    int n = d.stationary() ? depth : std::min(depth, *d.depth());
    json orders = json::array();
    for (int level = 1; level <= n; ++level) {
        json per_level = json::array();
        for (int v = 0; v < d.level_size(level); ++v) {
            json word = json::array();
            const Word& w = d.order_word(level, v);
            for (int i = 0; i < w.length(); ++i) word.push_back(w.at(i));
            per_level.push_back(std::move(word));
        }
        orders.push_back(std::move(per_level));
    }
    j["orders"] = std::move(orders);
    return j.dump(2);
}

namespace {

json spec_to_json(const DiagramSpec& s) {
    json j;
    json prefix = json::array();
    for (const auto& p : s.prefix()) prefix.push_back(matrix_to_json(p));
    j["prefix"] = std::move(prefix);
    if (s.generator()) j["generator"] = matrix_to_json(*s.generator());
    return j;
}

DiagramSpec spec_from_json(const json& j) {
    std::vector<ExactMatrix> prefix;
    for (const auto& p : j.at("prefix")) prefix.push_back(matrix_from_json(p));
    std::optional<ExactMatrix> gen;
    if (j.contains("generator")) gen = matrix_from_json(j.at("generator"));
    return DiagramSpec(std::move(prefix), std::move(gen));
}

json link_to_json(const CertificateLink& link) {
    json j;
    if (const auto* il = std::get_if<InterleaveLink>(&link)) {
        j["kind"] = "interleave";
        j["left"] = spec_to_json(il->left);
        j["right"] = spec_to_json(il->right);
        json chain = json::array();
        for (const auto& c : il->chain) chain.push_back(matrix_to_json(c));
        j["chain"] = std::move(chain);
        j["odd_powers"] = il->left_counts;
        j["even_powers"] = il->right_counts;
        j["right_offset"] = il->right_offset;
        j["period_start"] = il->period_start;
        j["period_len"] = il->period_len;
    } else if (const auto* pl = std::get_if<PowerLink>(&link)) {
        j["kind"] = "power";
        j["left"] = spec_to_json(pl->left);
        j["right"] = spec_to_json(pl->right);
        j["stride"] = pl->stride;
    } else if (const auto* sl = std::get_if<IsoLink>(&link)) {
        j["kind"] = "isomorphism";
        j["left"] = spec_to_json(sl->left);
        j["right"] = spec_to_json(sl->right);
        j["perm"] = sl->perm;
    }
    return j;
}

CertificateLink link_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "interleave") {
        InterleaveLink il;
        il.left = spec_from_json(j.at("left"));
        il.right = spec_from_json(j.at("right"));
        for (const auto& c : j.at("chain")) il.chain.push_back(matrix_from_json(c));
        il.left_counts = j.at("odd_powers").get<std::vector<int>>();
        il.right_counts = j.at("even_powers").get<std::vector<int>>();
        il.right_offset = j.value("right_offset", 0);
        il.period_start = j.value("period_start", 0);
        il.period_len = j.value("period_len", 0);
        return il;
    }
    if (kind == "power") {
        PowerLink pl;
        pl.left = spec_from_json(j.at("left"));
        pl.right = spec_from_json(j.at("right"));
        pl.stride = j.at("stride").get<unsigned>();
        return pl;
    }
    if (kind == "isomorphism") {
        IsoLink il;
        il.left = spec_from_json(j.at("left"));
        il.right = spec_from_json(j.at("right"));
        il.perm = j.at("perm").get<std::vector<int>>();
        return il;
    }
    throw std::invalid_argument("unknown certificate link kind '" + kind + "'");
}

} // namespace

std::string certificate_to_json(const UnorderedCertificate& c) {
    json j;
    j["schema"] = 1;
    json links = json::array();
    for (const auto& l : c.links) links.push_back(link_to_json(l));
    j["links"] = std::move(links);
    // flat view for single interleaving chains
    if (c.links.size() == 1) {
        if (const auto* il = std::get_if<InterleaveLink>(&c.links[0])) {
            json chain = json::array();
            for (const auto& m : il->chain) chain.push_back(matrix_to_json(m));
            j["chain"] = std::move(chain);
            j["odd_powers"] = il->left_counts;
            j["even_powers"] = il->right_counts;
        }
    }
    return j.dump(2);
}

UnorderedCertificate certificate_from_json(const std::string& text) {
    json j = json::parse(text);
    UnorderedCertificate cert;
    for (const auto& l : j.at("links")) cert.links.push_back(link_from_json(l));
    return cert;
}

std::string ordered_certificate_to_json(const OrderedCertificate& c) {
    json j;
    j["schema"] = 1;
    json links = json::array();
    for (const auto& l : c.links) {
        json lj;
        lj["left"] = write_substitution(l.left);
        lj["right"] = write_substitution(l.right);
        if (!l.relabel.empty()) {
            lj["relabel"] = l.relabel;
        } else {
            json chain = json::array();
            for (const auto& s : l.chain) chain.push_back(write_substitution(s));
            lj["chain"] = std::move(chain);
            lj["odd_powers"] = l.left_powers;
            lj["even_powers"] = l.right_powers;
            lj["period_start"] = l.period_start;
            lj["period_len"] = l.period_len;
        }
        links.push_back(std::move(lj));
    }
    j["links"] = std::move(links);
    return j.dump(2);
}

std::string diagram_to_dot(const BratteliDiagram& d, int depth) {
    std::ostringstream os;
    int n = d.stationary() ? depth : std::min(depth, *d.depth());
    os << "digraph bratteli {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int level = 0; level <= n; ++level) {
        auto labs = d.labels(level);
        os << "  subgraph cluster_" << level << " {\n    label=\"level " << level
           << "\";\n    rank=same;\n";
        for (size_t v = 0; v < labs.size(); ++v)
            os << "    v" << level << "_" << v << " [label=\"d=" << labs[v].get_str()
               << "\"];\n";
        os << "  }\n";
    }
    for (int level = 0; level < n; ++level) {
        ExactMatrix t = d.transition(level);
        for (int i = 0; i < t.rows(); ++i)
            for (int j = 0; j < t.cols(); ++j) {
                unsigned long mult = t(i, j).get_ui();
                for (unsigned long e = 0; e < mult; ++e)
                    os << "  v" << level << "_" << i << " -> v" << level + 1 << "_" << j
                       << ";\n";
            }
    }
    os << "}\n";
    return os.str();
}

std::string ordered_to_dot(const OrderedDiagram& d, int depth, bool color_extremes) {
    std::ostringstream os;
    int n = d.stationary() ? depth : std::min(depth, *d.depth());
    os << "digraph ordered_bratteli {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int level = 0; level <= n; ++level) {
        auto labs = d.labels(level);
        os << "  subgraph cluster_" << level << " {\n    label=\"level " << level
           << "\";\n    rank=same;\n";
        for (size_t v = 0; v < labs.size(); ++v)
            os << "    v" << level << "_" << v << " [label=\"d=" << labs[v].get_str()
               << "\"];\n";
        os << "  }\n";
    }
    for (int level = 1; level <= n; ++level) {
        for (int v = 0; v < d.level_size(level); ++v) {
            const Word& w = d.order_word(level, v);
            for (int r = 0; r < w.length(); ++r) {
                os << "  v" << level - 1 << "_" << w.at(r) << " -> v" << level << "_" << v
                   << " [label=\"" << r << "\"";
                if (color_extremes) {
                    bool is_min = r == 0;
                    bool is_max = r == w.length() - 1;
                    if (is_min && is_max) os << ", color=purple";
                    else if (is_max) os << ", color=red";
                    else if (is_min) os << ", color=green";
                }
                os << "];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << content;
}

} // namespace subkit
