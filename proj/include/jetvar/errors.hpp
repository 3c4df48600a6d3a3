#pragma once

#include <stdexcept>
#include <string>

namespace jetvar {

struct Error : std::runtime_error
{
	using std::runtime_error::runtime_error;
};

struct UnknownSymbol : Error { using Error::Error; };
struct DegreeError : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct OrderError : Error { using Error::Error; };
struct NotProjectable : Error { using Error::Error; };
struct KindError : Error { using Error::Error; };
struct SingularMetric : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct NonPolynomial : Error { using Error::Error; };
struct MissingBilinearForm : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };
struct InvalidAlgebra : Error { using Error::Error; };

struct ParseError : Error
{
	int line, column;
	ParseError(std::string const &msg, int line_, int column_)
	    : Error(std::to_string(line_) + ":" + std::to_string(column_) + ": " +
	            msg),
	      line(line_), column(column_)
	{}
};

} // namespace jetvar
