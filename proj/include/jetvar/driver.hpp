#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "jetvar/declaration.hpp"
#include "jetvar/io.hpp"

namespace jetvar {

enum class Format { Text, Latex, Json };

// One named output of a command. Equations print as "value = 0"; checks
// marked as identities make the run fail when false.
struct Result
{
	enum class Kind { Value, Equation, Check };
	std::string name;
	Kind kind = Kind::Value;
	std::variant<Expr, Form, bool> value;
	bool identity = false;

	bool is_zero() const;
	int jet_order() const;
};

struct Report
{
	JetContext ctx;   // context the results are printed in
	std::string command;
	std::vector<std::string> args;
	std::vector<Result> results;
	std::vector<std::string> warnings;
	bool failed() const;   // some identity check is false
};

struct Options
{
	Format format = Format::Text;
	Basis basis = Basis::Theta;
	bool physics_sign = false;
	std::vector<std::string> assert_zero;
	std::optional<int> max_order;
	std::string module = "all";   // for check nilpotency
};

// runs one command against a declaration; KindError for unknown commands or
// missing objects
Report run_command(Declaration &decl, Command const &cmd, Options const &opt);

// the `ym` and `brst` commands outside a declaration file
Report yang_mills_report(LieAlgebraData const &alg, std::string const &metric, int n,
                         Rational coupling, std::string const &what);
Report brst_report(LieAlgebraData const &alg, int n, std::string const &check);
// `check nilpotency`; decl may be null for the built-in corpus context
Report nilpotency_report(Declaration const *decl, std::string const &module);

std::string render(std::vector<Report> const &reports, Options const &opt);

// exit status of a run: 2 when an identity fails or an --assert-zero name is
// nonzero, else 0; KindError for an --assert-zero name no report produced
int exit_status(std::vector<Report> const &reports, Options const &opt);

} // namespace jetvar
