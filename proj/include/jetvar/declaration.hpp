#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jetvar/connections.hpp"
#include "jetvar/context.hpp"
#include "jetvar/form.hpp"
#include "jetvar/gauge.hpp"
#include "jetvar/sexpr.hpp"
#include "jetvar/tangent_valued.hpp"

namespace jetvar {

struct Command
{
	std::string name;
	std::vector<std::string> args;
	int line = 1, column = 1;
};

// A parsed declaration file: the jet context plus named objects and the
// command list. Names share one namespace.
struct Declaration
{
	JetContext ctx;
	std::optional<GaugeContext> gauge;   // its ctx is kept equal to `ctx`
	std::map<std::string, LieAlgebraData> algebras;
	std::map<std::string, Metric> metrics;
	std::map<std::string, Expr> lagrangians;
	std::map<std::string, Form> forms;
	std::map<std::string, VectorField> vector_fields;
	std::map<std::string, Connection> connections;
	std::map<std::string, TangentValuedForm> solderings;
	std::vector<Command> commands;

	GaugeContext const &gauge_context() const;   // KindError without a gauge block
};

// builtin names u1, su2, or a JSON table {"dim", "structure": [[r, p, q, c]...], "form"}
LieAlgebraData algebra_from_json(nlohmann::json const &j);
LieAlgebraData load_algebra(std::string const &name_or_path);
// euclid, minkowski (+ − … −)
Metric standard_metric(std::string const &kind, int n);

// ParseError with line/column on malformed input or unknown keys
Declaration parse_declaration(std::string const &text);
// the JSON mirror: an array of statements, each an array whose items are
// strings (symbols or s-expression text), numbers, or nested arrays
Declaration parse_declaration_json(nlohmann::json const &j);
SExpr sexpr_from_json(nlohmann::json const &j, int line, int column);
// dispatches on the first non-blank character ('[' means JSON)
Declaration parse_declaration_auto(std::string const &text);

} // namespace jetvar
