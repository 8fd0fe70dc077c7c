#ifndef MIXNEWTON_EXPR_PARSER_HPP
#define MIXNEWTON_EXPR_PARSER_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "mixnewton/mixed_poly.hpp"

namespace mixnewton {

struct SourceExpr {
    std::string text;
    std::optional<int> declared_n;
};

// Positioned syntax error; offset is a byte index into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string message, std::string expected);
    std::size_t offset;
    std::string message;
    std::string expected;
};

/**
 * Parses the expression language into a fully expanded term map.
 *
 * Grammar (see docs/grammar.md):
 *   expr   := term (('+' | '-') term)*
 *   term   := factor ('*' factor)*
 *   factor := '-' factor | atom ('^' NAT)?
 *   atom   := NUMBER | NUMBER 'i' | 'i' | 'z' NAT | 'zb' NAT
 *           | 'conj' '(' expr ')' | '(' expr ')'
 *
 * '^' binds tighter than '*', which binds tighter than '+'/'-'; '*', '+', '-'
 * are left associative. Juxtaposition is not multiplication: "2z1" is an
 * error. The ambient dimension is the maximal variable index unless
 * declared_n is given.
 */
MixedPolynomial parse(const SourceExpr& src);
MixedPolynomial parse(const std::string& text);

// Canonical rendering: terms in graded lexicographic (nu, mu) order;
// parse(format(f)) == f exactly.
std::string format(const MixedPolynomial& f);

} // namespace mixnewton

#endif
