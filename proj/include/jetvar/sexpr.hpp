#pragma once

#include <string>
#include <vector>

namespace jetvar {

// Parenthesized prefix syntax tree with source positions.
struct SExpr
{
	bool is_list = false;
	std::string atom;
	std::vector<SExpr> items;
	int line = 1, column = 1;
};

// parses exactly one s-expression; line/column give the position of text[0]
SExpr parse_sexpr(std::string const &text, int line = 1, int column = 1);
// parses a sequence of s-expressions
std::vector<SExpr> parse_sexprs(std::string const &text, int line = 1, int column = 1);

} // namespace jetvar
