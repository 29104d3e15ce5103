#ifndef GBSN_IO_HPP
#define GBSN_IO_HPP

#include "gbsn/finite_quotient.hpp"
#include "gbsn/graph_of_groups.hpp"
#include "gbsn/monodromy.hpp"

namespace gbsn {

/* Integer matrix literal, e.g. [[1,0],[0,1]]. No whitespace inside. */
IntMatrix parse_matrix_literal(const std::string& text);

/* Graph file:
 *   gbs rank=2
 *   vertex v0
 *   edge e1 from=v0 to=v1 alpha=[[1,0],[0,1]] omega=[[2,0],[0,2]]
 * or the one-line ascending HNN shorthand
 *   hnn rank=2 phi=[[3,0],[0,3]]
 * Blank lines and # comments are ignored. Errors carry 1-based line numbers. */
GraphOfGroups parse_graph(const std::string& text);

/* Canonical graph file text; re-parses to an identical graph. */
std::string render_graph(const GraphOfGroups& g);

/* View of a one-vertex one-loop graph with alpha = I as the ascending HNN
 * extension along omega; throws precondition_error for any other shape. */
AscendingHnn as_ascending_hnn(const GraphOfGroups& g);

/* Words are whitespace-separated tokens `a2^-3`, `t^2`, `t`, or `1`; the base
 * letters are a1..an, with plain `a` accepted and printed when the rank is 1. */
Word parse_word(const std::string& text, std::size_t rank);

/* One word per line; blank lines and # comments are ignored. */
std::vector<Word> parse_word_list(const std::string& text, std::size_t rank);

std::string render_word(const Word& w, std::size_t rank);
std::string render_normal_form(const NormalForm& nf, std::size_t rank);

/* Built-in graphs: `leary-minasyan` or `bs(n,PHI)` with PHI a matrix literal,
 * e.g. bs(1,[[2]]). */
GraphOfGroups builtin_example(const std::string& name);
std::vector<std::string> builtin_names();

std::string validation_json(const ValidationReport& r);
std::string presentation_json(const Presentation& p);
std::string monodromy_json(const MonodromyReport& r);
std::string verdict_json(const PropertyVerdict& v);
std::string verdicts_json(const std::vector<PropertyVerdict>& vs);
std::string normal_form_json(const NormalForm& nf, std::size_t rank);
std::string level_quotient_json(const LevelQuotient& lq,
                                const std::optional<QuotientImage>& image);
std::string certificate_json(const Certificate& c);
std::string search_result_json(const SearchResult& r);

} // namespace gbsn

#endif
