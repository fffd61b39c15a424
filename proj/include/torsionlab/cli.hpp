// Declarative job files: a line-oriented grammar for field, presentation,
// representation, and task declarations; a runner executing the tasks in
// order; and text / JSON report rendering with a parse-back helper for the
// machine format.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torsionlab/complex.hpp"
#include "torsionlab/group.hpp"
#include "torsionlab/rep.hpp"
#include "torsionlab/ring.hpp"

namespace torsionlab {

// One task declaration. `kind` is one of: wada, complex_torsion, alexander,
// reciprocity, derivative, covering, fibered, abelian_check,
// multiplicativity, conjugation. `name` is the unique report key (defaults
// to the kind; override with `name = ...` to declare a kind twice).
struct TaskDecl {
  std::string kind;
  std::string name;
  int line = 0;

  std::optional<std::string> remove;         // wada: generator column to drop
  std::optional<int> boundary_components;    // reciprocity: b
  std::vector<int> a_exponents;              // derivative: boundary exponents
  std::vector<int> reduce;                   // derivative: reduction exponents
  std::optional<int> cover_order;            // covering: m
  std::optional<FieldScalar> xi;             // abelian_check: diagonal value
  std::optional<Matrix<FieldScalar>> matrix; // fibered: twisted monodromy
  std::optional<Matrix<long>> phi1;          // fibered: weight-one action
  std::optional<int> trials;                 // randomized suites
  std::optional<int> max_dim;                // multiplicativity: size cap
};

struct Job {
  TowerPtr tower;                 // after every extension and parameter
  std::vector<std::string> vars;  // torsion variables
  std::optional<Presentation> pres;
  std::optional<SL2Rep> rep;
  std::optional<AbelianizationMap> phi;
  std::vector<TaskDecl> tasks;
};

// Parses the grammar (statements end with ';', '#' starts a comment):
//   vars t1 t2 ;
//   extend i : x^2 + 1 ;            extend z : cyclotomic 6 ;
//   params alpha beta ;
//   gens a b ;   let w = ... ;   rel ... ;
//   phi a = t1 ;   rho a = [[alpha, 1], [0, alpha^-1]] ;
//   task wada { remove = a ; }
// Throws ParseError with line/column diagnostics; every symbol a statement
// uses must be declared earlier in the file.
Job parse_job_text(const std::string& text);
Job parse_job_file(const std::string& path);

// Scalar expression over the tower's declared symbols: integers, + - * /,
// parentheses, and ^ with integer (possibly negative) exponents. Also used
// to read coefficient strings back from machine reports.
FieldScalar parse_scalar(const std::string& text, const TowerPtr& tower);

struct RunOptions {
  std::vector<std::string> selected;  // task names to run; empty runs all
  unsigned long seed = 0;             // drives the randomized task kinds
  bool check_invariants = false;      // extra cross-checks on wada tasks
};

struct TaskOutcome {
  std::string name;
  std::string kind;
  bool ok = true;
  std::optional<LaurentPoly> poly;    // polynomial-valued results
  std::optional<RatFunc> value;       // genuinely rational results
  std::optional<FieldScalar> scalar;  // scalar-valued results
  Ambiguity ambiguity;
  std::vector<std::string> notes;     // includes the error text when !ok
};

struct JobReport {
  unsigned long seed = 0;
  std::vector<std::string> warnings;  // representation validation warnings
  std::vector<TaskOutcome> tasks;
  bool all_ok() const;
};

// Validates the declared representation, then runs the selected tasks in
// declaration order, turning task-level errors into failed outcomes.
// Throws ValidationError for an unknown selected task name or a hard
// validation failure, before any task runs.
JobReport run_job(const Job& job, const RunOptions& opts);

// One section per task: a status line, the value printed graded-lex with
// the min-degree-0 normalization and its ambiguity annotation, then notes.
std::string render_text(const Job& job, const JobReport& report);

// Machine format: {seed, warnings, tasks:[{task, kind, status, value,
// ambiguity, notes}]} with value.terms = [[exponents, coefficient-string]].
// Byte-identical for identical job text, selection, and seed.
std::string render_json(const Job& job, const JobReport& report);

// Recovers the polynomial-valued results of a machine report, for the
// round-trip contract; tasks without a polynomial value are skipped.
std::vector<std::pair<std::string, LaurentPoly>> report_polynomials(
    const std::string& json_text, const TowerPtr& tower);

}  // namespace torsionlab
