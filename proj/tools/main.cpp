#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pnf/problem.hpp"

namespace {

using namespace pnf;
using nlohmann::json;

enum class Format { Text, Machine };

std::string real_str(const Real& v, unsigned digits = 40) {
    return v.str(digits);
}

json witness_json(const Error& e) {
    json w = json::object();
    for (const auto& [k, v] : e.witness()) w[k] = v;
    return w;
}

json monomial_json(const Monomial& m, const VarNames& names) {
    return Poly::monomial(m.nvars(), m, Scalar(1)).str(names);
}

// ---- lie-validate ----------------------------------------------------------

int run_lie_validate(const ProblemFile& p, Format fmt) {
    ValidationReport report = lie_validate(p.space->algebra);
    if (fmt == Format::Machine) {
        json out;
        out["task"] = "lie-validate";
        out["status"] = "ok";
        out["pass"] = report.all_pass();
        json checks = json::array();
        for (const auto& c : report.checks)
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
        out["checks"] = checks;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "validation of algebra '" << p.space->algebra.name << "' (dim "
                  << p.space->algebra.dim << ")\n";
        for (const auto& c : report.checks) {
            std::cout << "  " << c.name << ": " << (c.pass ? "pass" : "FAIL");
            if (!c.pass) std::cout << "  [" << c.witness << "]";
            std::cout << "\n";
        }
        std::cout << (report.all_pass() ? "PASS" : "FAIL") << "\n";
    }
    return report.all_pass() ? 0 : 1;
}

// ---- linearize --------------------------------------------------------------

json residual_table_json(const std::vector<DegreeResidual>& table) {
    json rows = json::array();
    for (const auto& row : table)
        rows.push_back({{"degree", row.degree},
                        {"zero", row.zero},
                        {"max_abs_sq", rational_str(row.max_abs2)},
                        {"terms", row.terms}});
    return rows;
}

int run_linearize(const ProblemFile& p, Schedule schedule, Format fmt) {
    HomogeneousPair pair{*p.space, p.vector_field};
    LinearizationResult result = linearize(pair, schedule);
    VarNames names = p.space->names();
    if (fmt == Format::Machine) {
        json out;
        out["task"] = "linearize";
        out["status"] = "ok";
        out["pass"] = result.success;
        out["h1"] = result.h1.str(names);
        json images = json::array();
        for (const Poly& img : result.map.images) images.push_back(img.str(names));
        out["map"] = images;
        out["residual_by_degree"] = residual_table_json(result.residual_by_degree);
        json divisors = json::array();
        for (const auto& d : result.divisor_log)
            divisors.push_back({{"degree", d.degree},
                                {"monomial", monomial_json(d.argmin, names)},
                                {"eigenvalue", d.value.str()}});
        out["divisor_log"] = divisors;
        json blocks = json::array();
        for (const auto& b : result.blocks)
            blocks.push_back({{"lo", b.lo}, {"hi", b.hi}, {"skipped", b.skipped}});
        out["blocks"] = blocks;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "linearization over '" << p.space->algebra.name << "', N = " << p.space->N
                  << "\n";
        std::cout << "h1 = " << result.h1.str(names) << "\n";
        std::cout << "normalizing map:\n" << result.map.str(names) << "\n";
        std::cout << "residuals by degree:\n";
        for (const auto& row : result.residual_by_degree)
            std::cout << "  deg " << row.degree << ": "
                      << (row.zero ? "0" : "NONZERO (" + std::to_string(row.terms) + " terms)")
                      << "\n";
        std::cout << "smallest divisors:\n";
        for (const auto& d : result.divisor_log)
            std::cout << "  deg " << d.degree << ": " << d.value.str() << " at "
                      << monomial_json(d.argmin, names).get<std::string>() << "\n";
        std::cout << (result.success ? "PASS" : "FAIL") << "\n";
    }
    return result.success ? 0 : 1;
}

// ---- birkhoff ---------------------------------------------------------------

int run_birkhoff(const ProblemFile& p, Format fmt) {
    BirkhoffInput input{*p.space, p.hamiltonian, p.gamma, p.h1};
    BirkhoffResult result = birkhoff_normalize(input);
    VarNames names = p.space->names();
    Poly resonant_part = result.H_normalized - result.H_ss;
    if (fmt == Format::Machine) {
        json out;
        out["task"] = "birkhoff";
        out["status"] = "ok";
        out["pass"] = result.success;
        out["H_ss"] = result.H_ss.str(names);
        out["H_normalized"] = result.H_normalized.str(names);
        out["residual"] = result.residual.str(names);
        json images = json::array();
        for (const Poly& img : result.map.images) images.push_back(img.str(names));
        out["map"] = images;
        json basis = json::array();
        for (const auto& [m, c] : resonant_part.terms())
            basis.push_back(monomial_json(m, names));
        out["resonant_basis"] = basis;
        json log = json::array();
        for (const auto& s : result.loop_log)
            log.push_back({{"stage", s.stage},
                           {"iterations", s.iterations},
                           {"lower_stages_intact", s.lower_stages_intact}});
        out["loop_log"] = log;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "Birkhoff normalization, l = " << p.space->l << ", algebra '"
                  << p.space->algebra.name << "', N = " << p.space->N << "\n";
        std::cout << "H_ss = " << result.H_ss.str(names) << "\n";
        std::cout << "H_normalized = " << result.H_normalized.str(names) << "\n";
        std::cout << "residual {H, H_ss} = " << result.residual.str(names) << "\n";
        std::cout << "nilpotent loop log:\n";
        for (const auto& s : result.loop_log)
            std::cout << "  stage " << s.stage << ": " << s.iterations << " iteration(s)\n";
        std::cout << (result.success ? "PASS" : "FAIL") << "\n";
    }
    return result.success ? 0 : 1;
}

// ---- resonance --------------------------------------------------------------

json intmat_json(const IntMat& m) {
    json rows = json::array();
    for (const IntVec& row : m) {
        json r = json::array();
        for (const mpz_class& v : row) r.push_back(v.get_str());
        rows.push_back(r);
    }
    return rows;
}

int run_resonance(const ProblemFile& p, int degree, Format fmt) {
    std::vector<Scalar> alpha = p.effective_alpha();
    ResonanceData data = resonance_lattice(p.gamma, alpha);
    int N = degree > 0 ? degree : (p.space ? p.space->N : 4);
    std::vector<Monomial> monos = resonant_monomials(data, N);
    std::vector<MultiVec> gens = toric_generators(data);
    VarNames names{data.l, data.m};
    if (fmt == Format::Machine) {
        json out;
        out["task"] = "resonance";
        out["status"] = "ok";
        out["toric_degree"] = data.toric_degree;
        out["R_basis"] = intmat_json(data.R_basis);
        out["Q_basis"] = intmat_json(data.Q_basis);
        json gen = json::array();
        for (const MultiVec& Z : gens) {
            json comps = json::array();
            for (int j = 0; j < data.n(); ++j) comps.push_back(Z.component({j}).str(names));
            gen.push_back(comps);
        }
        out["generators"] = gen;
        json mlist = json::array();
        for (const Monomial& m : monos) mlist.push_back(monomial_json(m, names));
        out["resonant_monomials"] = mlist;
        out["N"] = N;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "resonance lattice on dimension " << data.n() << " (l = " << data.l
                  << ", m = " << data.m << ")\n";
        std::cout << "toric degree: " << data.toric_degree << "\n";
        std::cout << "R basis rows: " << data.R_basis.size() << "\n";
        for (const IntVec& row : data.R_basis) {
            std::cout << "  [";
            for (size_t j = 0; j < row.size(); ++j)
                std::cout << (j ? " " : "") << row[j].get_str();
            std::cout << "]\n";
        }
        std::cout << "torus generators:\n";
        for (const MultiVec& Z : gens) std::cout << "  " << Z.str(names) << "\n";
        std::cout << "resonant monomials through degree " << N << ":\n  ";
        for (size_t k = 0; k < monos.size(); ++k)
            std::cout << (k ? ", " : "")
                      << monomial_json(monos[k], names).get<std::string>();
        std::cout << "\n";
    }
    return 0;
}

// ---- omega ------------------------------------------------------------------

int run_omega(const ProblemFile& p, int threads, Format fmt) {
    std::vector<Scalar> weights = p.has_weights ? p.weights : p.effective_alpha();
    if (fmt == Format::Text) {
        // The enumeration size is announced before the scan starts.
        std::cout << "scanning up to "
                  << omega_enumeration_budget(static_cast<int>(weights.size()), p.d_max)
                  << " lattice points (shells 2 .. 2^" << p.d_max + 1 << ")\n";
    }
    DivisorProfile profile = omega_sequence(weights, p.d_max, threads);
    if (fmt == Format::Machine) {
        json out;
        out["task"] = "omega";
        out["status"] = "ok";
        out["d_max"] = profile.d_max;
        out["exact"] = profile.exact;
        out["enumeration_budget"] = profile.budget;
        out["enumerated"] = profile.enumerated;
        json rows = json::array();
        for (size_t k = 0; k < profile.omegas.size(); ++k) {
            const OmegaEntry& e = profile.omegas[k];
            json row;
            row["d"] = e.d;
            row["omega_sq"] = rational_str(e.value_sq);
            if (e.exact) row["omega"] = rational_str(e.value_exact);
            row["omega_decimal"] = real_str(e.value);
            row["bruno_partial"] = real_str(profile.bruno_partials[k]);
            rows.push_back(row);
        }
        out["omegas"] = rows;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "omega sequence, d_max = " << profile.d_max << " ("
                  << profile.enumerated << " lattice points)\n";
        for (size_t k = 0; k < profile.omegas.size(); ++k) {
            const OmegaEntry& e = profile.omegas[k];
            std::cout << "  d = " << e.d << ": omega = ";
            if (e.exact)
                std::cout << rational_str(e.value_exact);
            else
                std::cout << real_str(e.value, 30);
            std::cout << ", Bruno partial sum = " << real_str(profile.bruno_partials[k], 30)
                      << "\n";
        }
        std::cout << "no divergence evidence through d_max (partial sums only)\n";
    }
    return 0;
}

// ---- siegel -----------------------------------------------------------------

int run_siegel(const ProblemFile& p, Format fmt) {
    SiegelReport report = siegel_check(p.gamma, p.c, p.s, p.lambda_max);
    VarNames names{0, static_cast<int>(p.gamma.size())};
    if (fmt == Format::Machine) {
        json out;
        out["task"] = "siegel";
        out["status"] = "ok";
        out["scanned"] = report.scanned;
        out["consistent"] = report.violations.empty();
        json v = json::array();
        for (const auto& viol : report.violations)
            v.push_back({{"monomial", monomial_json(viol.lambda, names)},
                         {"divisor", viol.divisor.str()}});
        out["violations"] = v;
        if (report.has_margin) {
            out["min_margin_sq"] = rational_str(report.min_margin_sq);
            out["min_margin_at"] = monomial_json(report.margin_argmin, names);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "Siegel check: |divisor| >= c/|lambda|^s, c = " << rational_str(p.c)
                  << ", s = " << p.s << ", |lambda| <= " << p.lambda_max << "\n";
        std::cout << "scanned " << report.scanned << " exponent vectors\n";
        if (report.violations.empty())
            std::cout << "consistent so far (no violations)\n";
        else
            for (const auto& viol : report.violations)
                std::cout << "  violation at "
                          << monomial_json(viol.lambda, names).get<std::string>()
                          << " (divisor " << viol.divisor.str() << ")\n";
        if (report.has_margin)
            std::cout << "minimal margin |divisor|^2 |lambda|^{2s} = "
                      << rational_str(report.min_margin_sq) << "\n";
    }
    return report.violations.empty() ? 0 : 1;
}

// ---- selftest ---------------------------------------------------------------

int run_selftest() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    for (const std::string name : {"sl2", "sl3", "so3"}) {
        LieAlgebraData alg = *lie_builtin(name);
        check("lie-validate " + name, lie_validate(alg).all_pass());
        MultiVec pi = lie_poisson(alg);
        check("jacobi [Pi,Pi] = 0 for " + name, schouten(pi, pi, -1).is_zero());
        MultiVec I = MultiVec::euler(alg.dim);
        check("Euler identity [I,Pi] = -Pi for " + name, schouten(I, pi, -1) == -pi);
    }

    {
        // sl(2) resonance picture for a generic Cartan element.
        ProblemSpace space{0, lie_sl2(), 4, Field::Q};
        Poly h1 = Poly::variable(3, 2);
        ResonanceData data = resonance_lattice({}, cartan_weights(space, h1));
        check("sl2 toric degree 1", data.toric_degree == 1);
        std::vector<Monomial> monos = resonant_monomials(data, 4);
        VarNames names{0, 3};
        std::ostringstream got;
        for (size_t k = 0; k < monos.size(); ++k)
            got << (k ? ", " : "")
                << Poly::monomial(3, monos[k], Scalar(1)).str(names);
        check("sl2 resonant monomials through degree 4",
              got.str() == "1*z3, 1*z3^2, 1*z1*z2, 1*z3^3, 1*z1*z2*z3, 1*z3^4, "
                           "1*z1*z2*z3^2, 1*z1^2*z2^2");
    }

    {
        // The generic Cartan element needs the imaginary direction: over Q a
        // single functional can only cut the lattice rank by one.
        ProblemSpace space{0, lie_sl3(), 3, Field::Qi};
        Poly h1 = Poly::variable(8, 6) + Poly::variable(8, 7).scaled(Scalar::unit_i());
        ResonanceData data = resonance_lattice({}, cartan_weights(space, h1));
        check("sl3 toric degree 2", data.toric_degree == 2);
    }

    {
        // Round-trip linearization on sl(2); small weights keep every Theta
        // eigenvalue away from zero.
        ProblemSpace space{0, lie_sl2(), 4, Field::Q};
        MultiVec pi = product_poisson(space);
        int n = 3, N = 4;
        Poly h1 = Poly::variable(n, 2).scaled(Scalar(Rational(1, 9)));
        MultiVec linear = MultiVec::euler(n) + hamiltonian_vf(h1, pi, N);
        Poly g = poly_mul_trunc(poly_mul_trunc(Poly::variable(n, 0), Poly::variable(n, 1), N),
                                Poly::variable(n, 2), N);
        MultiVec X = flow_pushforward(linear, g, pi, N);
        LinearizationResult res = linearize({space, X}, Schedule::BlockDoubling);
        check("sl2 linearization round trip", res.success);
    }

    {
        // Small Birkhoff run on the symplectic-times-sl(2) product.
        ProblemSpace space{1, lie_sl2(), 4, Field::Q};
        int n = 5;
        VarNames names = space.names();
        Poly H = parse_poly("1*x1*y1 + 1*z3 + 1*x1^2*z1 + 1*z1*z2*z3 + 1*y1*z2^2", names);
        BirkhoffInput input{space, H, {Scalar(1)}, Poly::variable(n, 4)};
        BirkhoffResult res = birkhoff_normalize(input);
        check("birkhoff residual vanishes", res.success);
    }

    {
        DivisorProfile profile = omega_sequence({Scalar(), Scalar(), Scalar()}, 3);
        bool ok = true;
        for (const OmegaEntry& e : profile.omegas)
            ok = ok && e.exact && e.value_exact == Rational(1, 2 * e.d);
        check("omega caps at 1/(2d) for zero weights", ok);
    }

    std::cout << (failures == 0 ? "selftest PASS" : "selftest FAIL") << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact normal forms of vector fields on Poisson spaces"};
    app.require_subcommand(1);

    std::string problem_path;
    std::string schedule_name = "block";
    std::string format_name = "text";
    int degree_override = -1;
    int threads = 1;

    auto add_common = [&](CLI::App* sub, bool with_schedule) {
        sub->add_option("problem", problem_path, "problem file (JSON)")->required();
        sub->add_option("--format", format_name, "text|machine")
            ->check(CLI::IsMember({"text", "machine"}));
        sub->add_option("--degree", degree_override, "override the truncation degree N");
        sub->add_option("--threads", threads, "cap internal parallelism")
            ->check(CLI::PositiveNumber);
        if (with_schedule)
            sub->add_option("--schedule", schedule_name, "block|degree")
                ->check(CLI::IsMember({"block", "degree"}));
    };

    CLI::App* cmd_validate = app.add_subcommand("lie-validate", "validate structure constants");
    add_common(cmd_validate, false);
    CLI::App* cmd_linearize =
        app.add_subcommand("linearize", "linearize a homogeneous Poisson pair");
    add_common(cmd_linearize, true);
    CLI::App* cmd_birkhoff =
        app.add_subcommand("birkhoff", "Poincare-Birkhoff normalization of a Hamiltonian");
    add_common(cmd_birkhoff, false);
    CLI::App* cmd_resonance =
        app.add_subcommand("resonance", "resonance lattice, toric degree, resonant monomials");
    add_common(cmd_resonance, false);
    CLI::App* cmd_omega = app.add_subcommand("omega", "small-divisor omega sequence");
    add_common(cmd_omega, false);
    CLI::App* cmd_siegel = app.add_subcommand("siegel", "Siegel-type condition scan");
    add_common(cmd_siegel, false);
    app.add_subcommand("selftest", "run the built-in golden suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    Format fmt = format_name == "machine" ? Format::Machine : Format::Text;
    std::optional<int> deg =
        degree_override >= 0 ? std::optional<int>(degree_override) : std::nullopt;

    auto fail = [&](const Error& e, const char* kind, int code) {
        if (fmt == Format::Machine) {
            json out;
            out["status"] = "error";
            out["kind"] = kind;
            out["code"] = e.code();
            out["message"] = e.what();
            out["witness"] = witness_json(e);
            std::cout << out.dump(2) << "\n";
        } else {
            std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
            for (const auto& [k, v] : e.witness()) std::cerr << "  " << k << ": " << v << "\n";
        }
        return code;
    };

    try {
        if (app.got_subcommand("selftest")) return run_selftest();
        Task task;
        if (app.got_subcommand(cmd_validate))
            task = Task::LieValidate;
        else if (app.got_subcommand(cmd_linearize))
            task = Task::Linearize;
        else if (app.got_subcommand(cmd_birkhoff))
            task = Task::Birkhoff;
        else if (app.got_subcommand(cmd_resonance))
            task = Task::Resonance;
        else if (app.got_subcommand(cmd_omega))
            task = Task::Omega;
        else
            task = Task::Siegel;

        ProblemFile p = load_problem(problem_path, task, deg);
        switch (task) {
            case Task::LieValidate:
                return run_lie_validate(p, fmt);
            case Task::Linearize:
                return run_linearize(
                    p, schedule_name == "degree" ? Schedule::DegreeByDegree : Schedule::BlockDoubling,
                    fmt);
            case Task::Birkhoff:
                return run_birkhoff(p, fmt);
            case Task::Resonance:
                return run_resonance(p, degree_override, fmt);
            case Task::Omega:
                return run_omega(p, threads, fmt);
            case Task::Siegel:
                return run_siegel(p, fmt);
        }
    } catch (const InputError& e) {
        return fail(e, "input", 2);
    } catch (const DomainError& e) {
        return fail(e, "domain", 1);
    } catch (const Error& e) {
        return fail(e, "domain", 1);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
