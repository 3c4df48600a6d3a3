#pragma once

#include <string>

#include "json.hpp"

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/form.hpp"
#include "jetvar/sexpr.hpp"

namespace jetvar {

enum class Basis { Theta, Dy };

// symbol name of a variable: x1, eps, y, y[1,2] (directions 1-based)
std::string var_name(Var const &v, JetContext const &ctx);

// parenthesized prefix text
std::string to_text(Expr const &e, JetContext const &ctx);
std::string to_text(Form const &f, JetContext const &ctx, Basis basis = Basis::Theta);
Expr parse_expr(std::string const &text, JetContext const &ctx, int line = 1, int column = 1);
Expr expr_from_sexpr(SExpr const &s, JetContext const &ctx);
Form parse_form(std::string const &text, JetContext const &ctx, int line = 1, int column = 1);
Form form_from_sexpr(SExpr const &s, JetContext const &ctx);

// JSON tree form
nlohmann::json to_json(Expr const &e, JetContext const &ctx);
nlohmann::json to_json(Form const &f, JetContext const &ctx, Basis basis = Basis::Theta);
Expr expr_from_json(nlohmann::json const &j, JetContext const &ctx);
Form form_from_json(nlohmann::json const &j, JetContext const &ctx);

// LaTeX (output only)
std::string to_latex(Expr const &e, JetContext const &ctx);
std::string to_latex(Form const &f, JetContext const &ctx, Basis basis = Basis::Theta);

} // namespace jetvar
