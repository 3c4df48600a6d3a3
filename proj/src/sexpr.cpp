#include "jetvar/sexpr.hpp"

#include <cctype>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

struct Reader
{
	std::string const &s;
	std::size_t i = 0;
	int line, col;

	void advance()
	{
		if (s[i] == '\n')
		{
			++line;
			col = 1;
		}
		else
			++col;
		++i;
	}

	void skip()
	{
		while (i < s.size())
		{
			if (std::isspace((unsigned char)s[i]))
				advance();
			else if (s[i] == ';' || s[i] == '#')
			{
				while (i < s.size() && s[i] != '\n')
					advance();
			}
			else
				break;
		}
	}

	SExpr read()
	{
		skip();
		if (i >= s.size())
			throw ParseError("unexpected end of input", line, col);
		SExpr e;
		e.line = line;
		e.column = col;
		if (s[i] == ')')
			throw ParseError("unexpected ')'", line, col);
		if (s[i] == '(')
		{
			e.is_list = true;
			advance();
			for (;;)
			{
				skip();
				if (i >= s.size())
					throw ParseError("missing ')'", e.line, e.column);
				if (s[i] == ')')
				{
					advance();
					break;
				}
				e.items.push_back(read());
			}
			return e;
		}
		std::size_t start = i;
		int depth = 0;
		while (i < s.size())
		{
			char c = s[i];
			if (c == '[')
				++depth;
			else if (c == ']')
				--depth;
			else if (depth == 0 && (std::isspace((unsigned char)c) || c == '(' || c == ')'))
				break;
			advance();
		}
		e.atom = s.substr(start, i - start);
		return e;
	}
};

} // namespace

SExpr parse_sexpr(std::string const &text, int line, int column)
{
	Reader r{text, 0, line, column};
	SExpr e = r.read();
	r.skip();
	if (r.i != text.size())
		throw ParseError("trailing input after expression", r.line, r.col);
	return e;
}

std::vector<SExpr> parse_sexprs(std::string const &text, int line, int column)
{
	Reader r{text, 0, line, column};
	std::vector<SExpr> out;
	for (;;)
	{
		r.skip();
		if (r.i >= text.size())
			break;
		out.push_back(r.read());
	}
	return out;
}

} // namespace jetvar
