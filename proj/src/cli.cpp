#include "tsd/cli.hpp"

#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tsd/congruence.hpp"
#include "tsd/design.hpp"
#include "tsd/errors.hpp"
#include "tsd/report.hpp"
#include "tsd/sieve.hpp"

namespace tsd {

namespace {

std::vector<Perturbation> parse_perturbation(const std::string& text) {
    int r = 0, delta = 0;
    char comma = 0;
    std::istringstream in(text);
    if (!(in >> r >> comma >> delta) || comma != ',' || !(in >> std::ws).eof())
        throw std::invalid_argument("--perturb-cell expects `r,delta`");
    // Knock the constant coefficient of both combos off every case shape.
    const Rat amount(1, 16);
    return {{r, delta, 'A', 0, 0, amount}, {r, delta, 'B', 0, 0, amount}};
}

void emit(std::ostream& out, bool json, const Json& body,
          const std::string& text) {
    if (json)
        out << body.dump(2) << "\n";
    else
        out << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"verification and exclusion toolkit for tight spherical "
                 "5- and 7-designs"};
    app.require_subcommand(1);

    bool json = false;
    int jobs = 1;
    std::string registry_path;
    long factor_bound = 1000;
    long disc_bound = 10000;
    app.add_flag("--json", json, "machine-readable output");
    app.add_option("--jobs", jobs, "worker threads for ranged runs")
        ->check(CLI::PositiveNumber);
    app.add_option("--registry", registry_path,
                   "prior-work registry file (default: built-in entries)");
    app.add_option("--factor-bound", factor_bound,
                   "trial-division bound for factoring")
        ->check(CLI::PositiveNumber);
    app.add_option("--disc-bound", disc_bound,
                   "largest discriminant group enumerated")
        ->check(CLI::PositiveNumber);

    std::string vd_path;
    int vd_t = 7;
    auto* vd = app.add_subcommand(
        "verify-design", "strength, tightness and spectrum of a design file");
    vd->add_option("--in", vd_path, "design file")->required();
    vd->add_option("--t", vd_t, "target strength (3, 5 or 7)");

    std::string lr_path;
    auto* lr = app.add_subcommand("lattice-report",
                                  "invariants of the lattice a design spans");
    lr->add_option("--in", lr_path, "design file")->required();

    int sv_t = 0;
    long sv_from = 0, sv_to = 0;
    auto* sv =
        app.add_subcommand("sieve", "exclusion verdicts over a parameter range");
    sv->add_option("--t", sv_t, "design strength, 5 or 7")->required();
    sv->add_option("--from", sv_from, "first parameter")->required();
    sv->add_option("--to", sv_to, "last parameter")->required();

    std::string vt_perturb;
    auto* vt = app.add_subcommand(
        "verify-table", "re-derive the 24-cell odd-d congruence table");
    vt->add_option("--perturb-cell", vt_perturb, "")->group("");

    std::string bi_name, bi_out;
    auto* bi = app.add_subcommand("builtin", "export a built-in design");
    bi->add_option("--name", bi_name, "e8, e7dual or icosahedron")->required();
    bi->add_option("--out", bi_out, "output path")->required();

    for (auto* sub : {vd, lr, sv, vt, bi}) sub->fallthrough();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("tsd");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2; // pin usage errors to 2; --help stays 0
    }

    try {
        if (*vd) {
            if (vd_t != 3 && vd_t != 5 && vd_t != 7)
                throw std::invalid_argument("--t must be 3, 5 or 7");
            const Design dsg = load_design_file(vd_path);
            const DesignReport rep = design_report(dsg, vd_t);
            emit(out, json, rep.body, design_text(rep));
            return rep.pass ? 0 : 1;
        }
        if (*lr) {
            const Design dsg = load_design_file(lr_path);
            const DesignReport rep = lattice_report(dsg, Int(disc_bound));
            emit(out, json, rep.body, lattice_text(rep));
            return rep.pass ? 0 : 1;
        }
        if (*sv) {
            if (sv_t != 5 && sv_t != 7)
                throw std::invalid_argument("--t must be 5 or 7");
            const Registry registry = registry_path.empty()
                                          ? Registry::prior_work()
                                          : Registry::from_file(registry_path);
            const std::vector<Verdict> table =
                run_sieve(sv_t, sv_from, sv_to, registry, factor_bound, jobs);
            emit(out, json, sieve_json(table), sieve_text(table));
            return 0;
        }
        if (*vt) {
            const std::vector<Perturbation> perturb =
                vt_perturb.empty() ? std::vector<Perturbation>{}
                                   : parse_perturbation(vt_perturb);
            const TableReport rep = verify_table(perturb);
            emit(out, json, table_json(rep), table_text(rep));
            return rep.pass ? 0 : 1;
        }
        if (*bi) {
            const Design dsg = Design::builtin(bi_name);
            save_design_file(dsg, bi_out);
            out << "wrote " << bi_name << " (n = " << dsg.dim()
                << ", |X u -X| = " << dsg.size() << ") to " << bi_out << "\n";
            return 0;
        }
    } catch (const UnsupportedInput& e) {
        err << "unsupported input: " << e.what() << "\n";
        return 3;
    } catch (const BoundExceeded& e) {
        err << "bound exceeded: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace tsd
