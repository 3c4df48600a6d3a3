// jetvar: batch driver over declaration files.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "jetvar/driver.hpp"
#include "jetvar/errors.hpp"

using namespace jetvar;

namespace {

std::string slurp(std::string const &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

struct FileError
{
	std::string path;
	ParseError err;
};

Declaration load(std::string const &path)
{
	std::string text = slurp(path);
	try
	{
		return parse_declaration_auto(text);
	}
	catch (ParseError const &e)
	{
		throw FileError{path, e};
	}
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"jetvar: variational bicomplex, connections and gauge theory on jet manifolds"};
	app.require_subcommand(1);
	app.fallthrough();

	Options opt;
	std::string format = "text", basis = "theta";
	std::vector<std::string> assert_zero;
	int max_order = -1;
	app.add_option("--format", format, "output format")
	    ->check(CLI::IsMember({"text", "latex", "json"}));
	app.add_option("--basis", basis, "form basis for output")->check(CLI::IsMember({"dy", "theta"}));
	app.add_flag("--physics-sign", opt.physics_sign, "use the physics sign of Christoffel symbols");
	app.add_option("--assert-zero", assert_zero, "exit 2 unless the named result vanishes");
	app.add_option("--max-order", max_order, "warn when a result exceeds this jet order");

	// commands taking a declaration file and object names
	std::string file;
	std::vector<std::string> names;
	std::vector<std::pair<std::string, CLI::App *>> file_cmds;
	for (char const *c : {"el", "noether", "first-variation", "poincare-cartan", "legendre", "helmholtz",
	                      "trivial?", "antiderivative", "curvature", "torsion", "levi-civita", "ricci"})
	{
		auto *sub = app.add_subcommand(c, std::string(c) + " on a declaration file");
		sub->add_option("file", file, "declaration file")->required();
		sub->add_option("names", names, "object names");
		file_cmds.emplace_back(c, sub);
	}

	auto *run = app.add_subcommand("run", "execute the (run ...) statements of a declaration file");
	run->add_option("file", file, "declaration file")->required();

	std::string algebra = "su2", metric = "euclid", check_what, what = "all";
	int dim = 4;
	std::string coupling = "1";
	auto *ym = app.add_subcommand("ym", "Yang-Mills Lagrangian, field equations and Noether data");
	ym->add_option("--algebra", algebra, "u1, su2 or a JSON structure-constant table");
	ym->add_option("--metric", metric, "euclid or minkowski")->check(CLI::IsMember({"euclid", "minkowski"}));
	ym->add_option("--dim", dim, "base dimension")->check(CLI::Range(1, 8));
	ym->add_option("--coupling", coupling, "coupling constant (rational)");
	ym->add_option("what", what, "all, lagrangian, el or noether");

	int brst_dim = 2;
	auto *brst = app.add_subcommand("brst", "BRST operator of Yang-Mills theory");
	brst->add_option("--algebra", algebra, "u1, su2 or a JSON structure-constant table");
	brst->add_option("--dim", brst_dim, "base dimension")->check(CLI::Range(1, 6));
	brst->add_option("--check", check_what, "nilpotency");

	std::string check_kind, check_file;
	auto *chk = app.add_subcommand("check", "identity checks on a deterministic corpus");
	chk->add_option("kind", check_kind, "nilpotency")->required()->check(CLI::IsMember({"nilpotency"}));
	chk->add_option("file", check_file, "declaration file (optional)");
	chk->add_option("--module", opt.module, "all, forms, variational or brst")
	    ->check(CLI::IsMember({"all", "forms", "variational", "brst"}));

	try
	{
		app.parse(argc, argv);
	}
	catch (CLI::ParseError const &e)
	{
		int code = app.exit(e);
		return code == 0 ? 0 : 1;
	}

	opt.format = format == "json" ? Format::Json : format == "latex" ? Format::Latex : Format::Text;
	opt.basis = basis == "dy" ? Basis::Dy : Basis::Theta;
	opt.assert_zero = assert_zero;
	if (max_order >= 0)
		opt.max_order = max_order;

	try
	{
		std::vector<Report> reports;
		for (auto const &[name, sub] : file_cmds)
			if (sub->parsed())
			{
				Declaration d = load(file);
				if (max_order >= 0)
					d.ctx.set_max_order(max_order);
				reports.push_back(run_command(d, Command{name, names}, opt));
			}
		if (run->parsed())
		{
			Declaration d = load(file);
			for (auto const &c : d.commands)
				reports.push_back(run_command(d, c, opt));
		}
		if (ym->parsed())
		{
			JetContext none;
			auto q = parse_expr(coupling, none).constant_value();
			if (!q)
				throw KindError("coupling must be a rational number");
			reports.push_back(yang_mills_report(load_algebra(algebra), metric, dim, *q, what));
		}
		if (brst->parsed())
			reports.push_back(brst_report(load_algebra(algebra), brst_dim, check_what));
		if (chk->parsed())
		{
			if (check_file.empty())
				reports.push_back(nilpotency_report(nullptr, opt.module));
			else
			{
				Declaration d = load(check_file);
				reports.push_back(nilpotency_report(&d, opt.module));
			}
		}
		for (auto const &r : reports)
			for (auto const &w : r.warnings)
				std::cerr << "warning: " << w << "\n";
		std::cout << render(reports, opt);
		return exit_status(reports, opt);
	}
	catch (FileError const &e)
	{
		std::cerr << e.path << ":" << e.err.what() << "\n";
		return 1;
	}
	catch (ParseError const &e)
	{
		std::cerr << "parse error: " << e.what() << "\n";
		return 1;
	}
	catch (std::exception const &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
}
