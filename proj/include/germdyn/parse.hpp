#pragma once

#include "germdyn/germ.hpp"
#include "germdyn/upoly.hpp"
#include "germdyn/valuation.hpp"

namespace germdyn {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, size_t pos_) : std::runtime_error(what), pos(pos_) {}
  size_t pos;
};

// Polynomial expressions in x and y with rational literals, zeta(m), + - * ^
// and parentheses.
BiSeries parse_poly(const std::string& text);

// "(expr, expr)" component pair; validates vanishing constant terms.
Germ parse_germ(const std::string& text);

// ord0 | mono(s,t) | qm(<curve expr>, <skew>) | curve(<curve expr>)
Valuation parse_valuation(const std::string& text);

// Univariate polynomial in one symbol (theta); accepts the poly grammar with
// `t` (or x) as the variable and no second variable.
UPoly parse_theta_poly(const std::string& text);

Rat parse_rat(const std::string& text);

}  // namespace germdyn
