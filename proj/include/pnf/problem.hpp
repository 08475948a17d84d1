#pragma once

#include <optional>
#include <string>

#include "pnf/birkhoff.hpp"
#include "pnf/diagnostics.hpp"
#include "pnf/linearize.hpp"
#include "pnf/resonance.hpp"

namespace pnf {

enum class Task { LieValidate, Linearize, Birkhoff, Resonance, Omega, Siegel };

// One parsed problem document. Which members are meaningful depends on the
// task; the parser enforces the per-task schema and rejects unknown keys.
struct ProblemFile {
    Task task = Task::LieValidate;
    Field field = Field::Q;

    std::optional<ProblemSpace> space;  // present when the file names an algebra

    MultiVec vector_field;       // linearize
    Poly hamiltonian;            // birkhoff
    std::vector<Scalar> gamma;   // birkhoff / resonance / siegel
    Poly h1;                     // birkhoff / resonance / omega
    bool has_h1 = false;

    std::vector<Scalar> alpha;   // resonance without an algebra
    bool has_alpha = false;

    std::vector<Scalar> weights;  // omega without an algebra
    bool has_weights = false;
    int d_max = 3;

    Rational c;       // siegel
    int s = 0;        // siegel
    int lambda_max = 0;

    // Effective weight vector <alpha_i, h1> for omega/resonance tasks.
    std::vector<Scalar> effective_alpha() const;
};

ProblemFile parse_problem_text(const std::string& text, Task task,
                               std::optional<int> degree_override);
ProblemFile load_problem(const std::string& path, Task task,
                         std::optional<int> degree_override);

std::optional<Task> task_by_name(const std::string& name);

}  // namespace pnf
