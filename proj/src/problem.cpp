#include "pnf/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pnf {

using nlohmann::json;

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw InputError("bad-problem", what); }

Scalar scalar_from_json(const json& v, const std::string& key) {
    if (!v.is_string()) bad_input("key \"" + key + "\" expects scalars as strings");
    return parse_scalar(v.get<std::string>());
}

std::vector<Scalar> scalar_list(const json& v, const std::string& key) {
    if (!v.is_array()) bad_input("key \"" + key + "\" expects an array of scalar strings");
    std::vector<Scalar> out;
    for (const json& item : v) out.push_back(scalar_from_json(item, key));
    return out;
}

int int_from_json(const json& v, const std::string& key) {
    if (!v.is_number_integer()) bad_input("key \"" + key + "\" expects an integer");
    return v.get<int>();
}

LieAlgebraData algebra_from_json(const json& v) {
    if (v.is_string()) {
        auto builtin = lie_builtin(v.get<std::string>());
        if (!builtin) bad_input("unknown builtin algebra \"" + v.get<std::string>() + "\"");
        return *builtin;
    }
    if (!v.is_object()) bad_input("\"algebra\" must be a builtin name or an object");
    static const std::set<std::string> allowed = {"dim", "constants", "cartan", "weights"};
    for (const auto& [key, val] : v.items())
        if (!allowed.count(key)) bad_input("unknown key \"" + key + "\" in algebra");
    if (!v.contains("dim") || !v.contains("constants"))
        bad_input("explicit algebras need \"dim\" and \"constants\"");
    LieAlgebraData d;
    d.name = "custom";
    d.dim = int_from_json(v.at("dim"), "dim");
    if (d.dim <= 0) bad_input("algebra dimension must be positive");
    d.c.assign(static_cast<size_t>(d.dim) * d.dim * d.dim, Scalar());
    for (const json& entry : v.at("constants")) {
        if (!entry.is_array() || entry.size() != 4)
            bad_input("each constants entry is [i, j, k, value] with 1-based indices");
        int i = int_from_json(entry[0], "constants"), j = int_from_json(entry[1], "constants"),
            k = int_from_json(entry[2], "constants");
        if (i < 1 || i > d.dim || j < 1 || j > d.dim || k < 1 || k > d.dim)
            bad_input("constants indices out of range");
        d.cst(i - 1, j - 1, k - 1) = scalar_from_json(entry[3], "constants");
    }
    if (v.contains("cartan"))
        for (const json& idx : v.at("cartan")) {
            int t = int_from_json(idx, "cartan");
            if (t < 1 || t > d.dim) bad_input("cartan index out of range");
            d.cartan.push_back(t - 1);
        }
    std::sort(d.cartan.begin(), d.cartan.end());
    if (v.contains("weights")) {
        if (!v.at("weights").is_array() ||
            static_cast<int>(v.at("weights").size()) != d.dim)
            bad_input("\"weights\" needs one row per coordinate");
        for (const json& row : v.at("weights")) d.weights.push_back(scalar_list(row, "weights"));
    } else {
        d.weights.assign(static_cast<size_t>(d.dim),
                         std::vector<Scalar>(d.cartan.size(), Scalar()));
    }
    return d;
}

void check_field(const ProblemFile& p, const std::vector<Scalar>& values,
                 const std::string& what) {
    if (p.field != Field::Q) return;
    for (const Scalar& s : values)
        if (!s.is_real()) bad_input(what + " has imaginary parts but the field is Q");
}

void check_field_poly(const ProblemFile& p, const Poly& f, const std::string& what) {
    if (p.field != Field::Q) return;
    for (const auto& [m, c] : f.terms())
        if (!c.is_real()) bad_input(what + " has imaginary parts but the field is Q");
}

}  // namespace

std::vector<Scalar> ProblemFile::effective_alpha() const {
    if (has_alpha) return alpha;
    if (has_weights) return weights;
    if (space && has_h1) return cartan_weights(*space, h1);
    bad_input("no alpha/weights data available; provide \"alpha\", \"weights\" or an algebra "
              "with \"h1\"");
}

std::optional<Task> task_by_name(const std::string& name) {
    if (name == "lie-validate") return Task::LieValidate;
    if (name == "linearize") return Task::Linearize;
    if (name == "birkhoff") return Task::Birkhoff;
    if (name == "resonance") return Task::Resonance;
    if (name == "omega") return Task::Omega;
    if (name == "siegel") return Task::Siegel;
    return std::nullopt;
}

ProblemFile parse_problem_text(const std::string& text, Task task,
                               std::optional<int> degree_override) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        bad_input(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) bad_input("problem file must be a JSON object");

    static const std::map<Task, std::set<std::string>> allowed_keys = {
        {Task::LieValidate, {"field", "algebra"}},
        {Task::Linearize, {"field", "l", "algebra", "N", "vector_field"}},
        {Task::Birkhoff, {"field", "l", "algebra", "N", "hamiltonian", "gamma", "h1"}},
        {Task::Resonance, {"field", "l", "algebra", "N", "gamma", "h1", "alpha"}},
        {Task::Omega, {"field", "algebra", "h1", "weights", "d_max"}},
        {Task::Siegel, {"field", "gamma", "c", "s", "lambda_max"}},
    };
    const std::set<std::string>& allowed = allowed_keys.at(task);
    for (const auto& [key, val] : doc.items())
        if (!allowed.count(key)) bad_input("unknown key \"" + key + "\" for this task");

    ProblemFile p;
    p.task = task;
    if (doc.contains("field")) {
        std::string f = doc.at("field").get<std::string>();
        if (f == "Q")
            p.field = Field::Q;
        else if (f == "Q(i)")
            p.field = Field::Qi;
        else
            bad_input("field must be \"Q\" or \"Q(i)\"");
    }

    int l = doc.contains("l") ? int_from_json(doc.at("l"), "l") : 0;
    if (l < 0) bad_input("l must be nonnegative");
    int N = doc.contains("N") ? int_from_json(doc.at("N"), "N") : 0;
    if (degree_override) N = *degree_override;
    if (N < 0) bad_input("N must be nonnegative");

    if (doc.contains("algebra")) {
        ProblemSpace space;
        space.l = l;
        space.algebra = algebra_from_json(doc.at("algebra"));
        space.N = N;
        space.field = p.field;
        p.space = space;
    }

    auto require = [&](const char* key) {
        if (!doc.contains(key)) bad_input(std::string("missing required key \"") + key + "\"");
    };

    switch (task) {
        case Task::LieValidate:
            require("algebra");
            break;
        case Task::Linearize: {
            require("algebra");
            require("N");
            require("vector_field");
            if (l != 0) bad_input("linearize runs on pure Lie-Poisson spaces (l = 0)");
            const json& vf = doc.at("vector_field");
            int n = p.space->n();
            if (!vf.is_array() || static_cast<int>(vf.size()) != n)
                bad_input("\"vector_field\" needs one component per coordinate");
            VarNames names = p.space->names();
            MultiVec X(n, 1);
            for (int i = 0; i < n; ++i) {
                Poly comp = parse_poly(vf[static_cast<size_t>(i)].get<std::string>(), names);
                check_field_poly(p, comp, "vector_field");
                X.add_component({i}, comp);
            }
            p.vector_field = X;
            break;
        }
        case Task::Birkhoff: {
            require("algebra");
            require("N");
            require("hamiltonian");
            require("h1");
            VarNames names = p.space->names();
            p.hamiltonian = parse_poly(doc.at("hamiltonian").get<std::string>(), names);
            check_field_poly(p, p.hamiltonian, "hamiltonian");
            p.h1 = parse_poly(doc.at("h1").get<std::string>(), names);
            p.has_h1 = true;
            check_field_poly(p, p.h1, "h1");
            if (doc.contains("gamma")) p.gamma = scalar_list(doc.at("gamma"), "gamma");
            check_field(p, p.gamma, "gamma");
            if (static_cast<int>(p.gamma.size()) != l)
                bad_input("\"gamma\" needs exactly l entries");
            break;
        }
        case Task::Resonance: {
            require("N");
            if (doc.contains("gamma")) p.gamma = scalar_list(doc.at("gamma"), "gamma");
            check_field(p, p.gamma, "gamma");
            if (static_cast<int>(p.gamma.size()) != l && doc.contains("l"))
                bad_input("\"gamma\" needs exactly l entries");
            if (doc.contains("alpha")) {
                p.alpha = scalar_list(doc.at("alpha"), "alpha");
                p.has_alpha = true;
                check_field(p, p.alpha, "alpha");
            }
            if (doc.contains("h1")) {
                if (!p.space) bad_input("\"h1\" requires an algebra");
                p.h1 = parse_poly(doc.at("h1").get<std::string>(), p.space->names());
                p.has_h1 = true;
                check_field_poly(p, p.h1, "h1");
            }
            if (!p.has_alpha && !p.has_h1)
                bad_input("resonance needs either \"alpha\" or an algebra with \"h1\"");
            break;
        }
        case Task::Omega: {
            require("d_max");
            p.d_max = int_from_json(doc.at("d_max"), "d_max");
            if (doc.contains("weights")) {
                p.weights = scalar_list(doc.at("weights"), "weights");
                p.has_weights = true;
                check_field(p, p.weights, "weights");
            }
            if (doc.contains("h1")) {
                if (!p.space) bad_input("\"h1\" requires an algebra");
                p.h1 = parse_poly(doc.at("h1").get<std::string>(), p.space->names());
                p.has_h1 = true;
                check_field_poly(p, p.h1, "h1");
            }
            if (!p.has_weights && !p.has_h1)
                bad_input("omega needs either \"weights\" or an algebra with \"h1\"");
            break;
        }
        case Task::Siegel: {
            require("gamma");
            require("c");
            require("s");
            require("lambda_max");
            p.gamma = scalar_list(doc.at("gamma"), "gamma");
            check_field(p, p.gamma, "gamma");
            Scalar cs = scalar_from_json(doc.at("c"), "c");
            if (!cs.is_real()) bad_input("\"c\" must be a positive rational");
            p.c = cs.re;
            p.s = int_from_json(doc.at("s"), "s");
            p.lambda_max = int_from_json(doc.at("lambda_max"), "lambda_max");
            break;
        }
    }
    return p;
}

ProblemFile load_problem(const std::string& path, Task task,
                         std::optional<int> degree_override) {
    std::ifstream in(path);
    if (!in) throw InputError("io-error", "cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str(), task, degree_override);
}

}  // namespace pnf
