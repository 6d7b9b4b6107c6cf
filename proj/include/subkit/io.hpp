#pragma once

#include <string>

#include "subkit/certificate.hpp"
#include "subkit/equivalence.hpp"
#include "subkit/ordered.hpp"
#include "subkit/ordered_equiv.hpp"
#include "subkit/substitution.hpp"

namespace subkit {

// Substitution text format: optional `letters:`/`letters_from:`/`letters_to:`
// headers fixing alphabet order, then one `a -> ab` rule per line. With a
// header, image letters may be whitespace-separated multi-character tokens.
Substitution parse_substitution(const std::string& text);
std::string write_substitution(const Substitution& s);

// Matrix text format: one row per line, blank lines and '#' comments ignored.
ExactMatrix parse_matrix(const std::string& text);
std::string write_matrix(const ExactMatrix& m);

// Diagram JSON: {"stationary", "generator", "depth", "labels", "transitions"},
// transitions stored in incidence orientation |V_n| x |V_{n+1}|.
std::string diagram_to_json(const BratteliDiagram& d, int depth);
BratteliDiagram diagram_from_json(const std::string& text);

// Ordered-diagram JSON adds "orders": per level, per vertex, the source list.
std::string ordered_to_json(const OrderedDiagram& d, int depth);

std::string certificate_to_json(const UnorderedCertificate& c);
UnorderedCertificate certificate_from_json(const std::string& text);

std::string ordered_certificate_to_json(const OrderedCertificate& c);

// DOT export: levels as same-rank clusters, vertices labeled d=<label>,
// parallel edges with multiplicity. The ordered variant labels each edge with
// its rank; color_extremes paints maximal edges red and minimal edges green.
std::string diagram_to_dot(const BratteliDiagram& d, int depth);
std::string ordered_to_dot(const OrderedDiagram& d, int depth, bool color_extremes);

// Files.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace subkit
