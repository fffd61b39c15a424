// Tests for the job-file front end: the job grammar and its diagnostics,
// scalar expression parsing, task execution and selection, report
// rendering in both formats, and the machine-report round-trip.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/cli.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/torsion.hpp"

using namespace torsionlab;

namespace {

std::string fixture(const std::string& name) {
  return std::string(TORSIONLAB_FIXTURES_DIR) + "/" + name;
}

LaurentPoly uni(const TowerPtr& t, const std::vector<long>& asc) {
  LaurentPoly p = LaurentPoly::zero(t, {"t"});
  for (size_t i = 0; i < asc.size(); ++i) {
    p.add_term({static_cast<int>(i)}, FieldScalar::integer(t, asc[i]));
  }
  return p;
}

const TaskOutcome& outcome(const JobReport& r, const std::string& name) {
  for (const auto& t : r.tasks) {
    if (t.name == name) return t;
  }
  REQUIRE(false);
  return r.tasks.front();
}

int parse_error_line(const std::string& text) {
  try {
    parse_job_text(text);
  } catch (const ParseError& e) {
    return e.line;
  }
  return -1;
}

}  // namespace

TEST_CASE("scalar expressions over a tower") {
  TowerPtr q = FieldTower::rationals();
  CHECK(parse_scalar("3", q).equals(FieldScalar::integer(q, 3)));
  CHECK(parse_scalar("-2 + 5", q).equals(FieldScalar::integer(q, 3)));
  CHECK(parse_scalar("1/2 + 1/2", q).is_one());
  CHECK(parse_scalar("2^-1 * 2", q).is_one());
  CHECK(parse_scalar("(1 + 2) * (1 - 2)", q)
            .equals(FieldScalar::integer(q, -3)));
  CHECK(parse_scalar("0", q).is_zero());

  TowerPtr giq = adjoin_extension(
      q, "i",
      {FieldScalar::one(q), FieldScalar::zero(q), FieldScalar::one(q)});
  FieldScalar i = FieldScalar::symbol(giq, "i");
  CHECK(parse_scalar("i^2", giq).equals(-FieldScalar::one(giq)));
  CHECK(parse_scalar("(1 + i) * (1 - i)", giq)
            .equals(FieldScalar::integer(giq, 2)));
  CHECK(parse_scalar("1/(1 + i)", giq)
            .equals(FieldScalar::one(giq) / (FieldScalar::one(giq) + i)));

  // Output of str() parses back to the same scalar.
  FieldScalar v = (FieldScalar::integer(giq, 3) - i) /
                  (FieldScalar::integer(giq, 2) + i);
  CHECK(parse_scalar(v.str(), giq).equals(v));
  FieldScalar half_plus = (FieldScalar::one(giq) + i) /
                          FieldScalar::integer(giq, 2);
  CHECK(parse_scalar(half_plus.str(), giq).equals(half_plus));

  CHECK_THROWS_AS(parse_scalar("nope", q), ParseError);
  CHECK_THROWS_AS(parse_scalar("1 +", q), ParseError);
  CHECK_THROWS_AS(parse_scalar("1/0", q), ParseError);
  CHECK_THROWS_AS(parse_scalar("2 2", q), ParseError);
  CHECK_THROWS_AS(parse_scalar("0^-1", q), ParseError);
}

TEST_CASE("job grammar: declarations and tasks") {
  Job job = parse_job_text(
      "vars t1 t2 ;\n"
      "extend i : x^2 + 1 ;\n"
      "extend w : cyclotomic 6 ;\n"
      "params alpha ;\n"
      "gens a b ;\n"
      "let c = a b ;\n"
      "rel a c a^-1 c^-1 ;\n"
      "phi a = t1 ;\n"
      "phi b = t1^-2 * t2 ;\n"
      "rho a = [[alpha, 1], [0, alpha^-1]] ;\n"
      "rho b = [[i, 0], [w, -i]] ;\n"
      "task wada { remove = a ; name = main ; }\n"
      "task derivative { a_exponents = 1 1 ; reduce = 1 1 ; }\n");
  CHECK(job.vars == std::vector<std::string>{"t1", "t2"});
  CHECK(job.tower->symbol_index("i") >= 0);
  CHECK(job.tower->symbol_index("w") >= 0);
  CHECK(job.tower->symbol_index("alpha") >= 0);
  REQUIRE(job.pres.has_value());
  CHECK(job.pres->generators == std::vector<std::string>{"a", "b"});
  CHECK(job.pres->relators.size() == 1);
  REQUIRE(job.phi.has_value());
  CHECK(job.phi->images[0] == std::vector<int>{1, 0});
  CHECK(job.phi->images[1] == std::vector<int>{-2, 1});
  REQUIRE(job.rep.has_value());
  // omega^2 - omega + 1 = 0, so det [[i,0],[w,-i]] = -i^2 = 1.
  CHECK(job.rep->images[1].det().is_one());
  REQUIRE(job.tasks.size() == 2);
  CHECK(job.tasks[0].name == "main");
  CHECK(job.tasks[0].kind == "wada");
  CHECK(job.tasks[0].remove == "a");
  CHECK(job.tasks[1].a_exponents == std::vector<int>{1, 1});
  CHECK(job.tasks[1].reduce == std::vector<int>{1, 1});
}

TEST_CASE("job grammar: diagnostics carry line numbers") {
  CHECK(parse_error_line("vars t ;\nbogus a ;\n") == 2);
  CHECK(parse_error_line("vars t ;\nvars t ;\n") == 2);
  CHECK(parse_error_line("extend i : x^2 + 1 ;\nextend i : x^2 + 2 ;\n") == 2);
  CHECK(parse_error_line("vars t ;\nextend e : x + 1 ;\n") == 2);
  CHECK(parse_error_line("vars t ;\nextend e : 2*x^2 + 1 ;\n") == 2);
  CHECK(parse_error_line("vars t ;\nphi a = t ;\n") == 2);
  CHECK(parse_error_line("gens a ;\nvars t ;\nphi a = t ;\nphi a = t ;\n") ==
        4);
  CHECK(parse_error_line("vars t ;\ngens a b ;\nphi a = t ;\nphi b = t ;\n"
                         "rho a = [[1, 0], [0, 1]] ;\n") == 5);
  CHECK(parse_error_line("vars t ;\ngens a ;\nphi a = t ;\n"
                         "rho a = [[2, 0], [0, 1]] ;\n") == 4);
  CHECK(parse_error_line("vars t ;\ntask nonsense { }\n") == 2);
  CHECK(parse_error_line("vars t ;\ntask wada { m = 2 ; }\n") == 2);
  CHECK(parse_error_line("vars t ;\ntask covering { }\n") == 2);
  CHECK(parse_error_line("vars t ;\ntask wada { }\ntask wada { }\n") == 3);
  CHECK(parse_error_line("vars t ;\ngens a ;\nphi a = t ;\n"
                         "task wada { remove = z ; }\n") == 4);
  // Presentation diagnostics keep the job-file line of the bad statement.
  CHECK(parse_error_line("vars t ;\ngens a ;\nrel a q ;\n") == 3);
}

TEST_CASE("job execution on the bundled job files") {
  TowerPtr q = FieldTower::rationals();

  SUBCASE("figure-eight") {
    Job job = parse_job_file(fixture("fig8.tors"));
    JobReport rep = run_job(job, RunOptions{});
    CHECK(rep.all_ok());
    CHECK(rep.tasks.size() == 8);

    const TaskOutcome& wada = outcome(rep, "wada");
    REQUIRE(wada.poly.has_value());
    auto u = unit_equivalent(*wada.poly, uni(q, {1, -6, 6, -1}));
    REQUIRE(u.has_value());

    const TaskOutcome& der = outcome(rep, "derivative");
    REQUIRE(der.scalar.has_value());
    CHECK((der.scalar->equals(FieldScalar::integer(q, 3)) ||
           der.scalar->equals(FieldScalar::integer(q, -3))));
    CHECK(der.ambiguity.sign_free);

    const TaskOutcome& cov = outcome(rep, "covering");
    REQUIRE(cov.poly.has_value());
    LaurentPoly cover = LaurentPoly::zero(q, {"s"});
    cover.add_term({0}, FieldScalar::integer(q, 1));
    cover.add_term({1}, FieldScalar::integer(q, -24));
    cover.add_term({2}, FieldScalar::integer(q, 24));
    cover.add_term({3}, FieldScalar::integer(q, -1));
    CHECK(unit_equivalent(*cov.poly, cover).has_value());

    const TaskOutcome& alex = outcome(rep, "alexander");
    REQUIRE(alex.poly.has_value());
    CHECK(*alex.poly == uni(q, {1, -3, 1}));

    const TaskOutcome& recip = outcome(rep, "reciprocity");
    CHECK(recip.ok);
    bool saw_match = false;
    for (const auto& n : recip.notes) {
      if (n.find("observed duality sign: -1") != std::string::npos) {
        saw_match = true;
      }
    }
    CHECK(saw_match);

    const TaskOutcome& fib = outcome(rep, "fibered");
    REQUIRE(fib.poly.has_value());
    CHECK_FALSE(fib.ambiguity.sign_free);
    CHECK_FALSE(fib.ambiguity.monomial_free);

    const TaskOutcome& ab = outcome(rep, "abelian_check");
    CHECK(ab.ok);
  }

  SUBCASE("whitehead link at the parabolic point") {
    Job job = parse_job_file(fixture("whitehead_point.tors"));
    JobReport rep = run_job(job, RunOptions{});
    CHECK(rep.all_ok());
    const TaskOutcome& wada = outcome(rep, "wada");
    REQUIRE(wada.poly.has_value());
    // Divisible by (t1 - 1)(t2 - 1).
    TowerPtr tw = wada.poly->tower();
    LaurentPoly f1 = LaurentPoly::variable(tw, {"t1", "t2"}, "t1") -
                     LaurentPoly::constant(FieldScalar::one(tw), {"t1", "t2"});
    LaurentPoly f2 = LaurentPoly::variable(tw, {"t1", "t2"}, "t2") -
                     LaurentPoly::constant(FieldScalar::one(tw), {"t1", "t2"});
    CHECK_NOTHROW(divide_exact(divide_exact(*wada.poly, f1), f2));

    const TaskOutcome& der = outcome(rep, "derivative");
    REQUIRE(der.scalar.has_value());
    FieldScalar i = FieldScalar::symbol(tw, "i");
    FieldScalar expected =
        FieldScalar::integer(tw, 8) * (FieldScalar::one(tw) - i);
    CHECK((der.scalar->equals(expected) || der.scalar->equals(-expected)));

    const TaskOutcome& recip = outcome(rep, "reciprocity");
    CHECK(recip.ok);  // the sign mismatch is recorded, never a failure
    bool saw_mismatch = false;
    for (const auto& n : recip.notes) {
      if (n.find("disagree") != std::string::npos) saw_mismatch = true;
    }
    CHECK(saw_mismatch);
  }

  SUBCASE("torus retries the removed generator and gets 1") {
    Job job = parse_job_file(fixture("torus.tors"));
    JobReport rep = run_job(job, RunOptions{});
    CHECK(rep.all_ok());
    const TaskOutcome& wada = outcome(rep, "wada");
    REQUIRE(wada.poly.has_value());
    CHECK(wada.poly->is_constant());
    CHECK(wada.poly->constant_value().is_one());
    bool retried = false;
    for (const auto& n : wada.notes) {
      if (n.find("retried") != std::string::npos) retried = true;
    }
    CHECK(retried);
  }

  SUBCASE("trefoil without a representation") {
    Job job = parse_job_file(fixture("trefoil.tors"));
    JobReport rep = run_job(job, RunOptions{});
    CHECK(rep.all_ok());
    const TaskOutcome& alex = outcome(rep, "alexander");
    REQUIRE(alex.poly.has_value());
    CHECK(*alex.poly == uni(q, {1, -1, 1}));
    CHECK(outcome(rep, "abelian_check").ok);
  }

  SUBCASE("free rank one gives a non-polynomial value") {
    Job job = parse_job_file(fixture("free_rank_one.tors"));
    JobReport rep = run_job(job, RunOptions{});
    CHECK(rep.all_ok());
    const TaskOutcome& wada = outcome(rep, "wada");
    CHECK_FALSE(wada.poly.has_value());
    REQUIRE(wada.value.has_value());
    CHECK_FALSE(is_polynomial(*wada.value).has_value());
  }
}

TEST_CASE("task selection and failure handling") {
  Job job = parse_job_file(fixture("fig8.tors"));

  SUBCASE("selection preserves declaration order and filters") {
    RunOptions opts;
    opts.selected = {"alexander", "wada"};
    JobReport rep = run_job(job, opts);
    REQUIRE(rep.tasks.size() == 2);
    CHECK(rep.tasks[0].name == "wada");
    CHECK(rep.tasks[1].name == "alexander");
  }

  SUBCASE("unknown selection is an error") {
    RunOptions opts;
    opts.selected = {"nosuch"};
    CHECK_THROWS_WITH_AS(run_job(job, opts), "unknown task: nosuch",
                         ValidationError);
  }

  SUBCASE("a failing task is reported, later tasks still run") {
    Job j = parse_job_text(
        "vars t ;\n"
        "params alpha ;\n"
        "gens a ;\n"
        "phi a = t ;\n"
        "rho a = [[alpha, 0], [0, alpha^-1]] ;\n"
        "task reciprocity { }\n"
        "task wada { }\n");
    JobReport rep = run_job(j, RunOptions{});
    CHECK_FALSE(rep.all_ok());
    CHECK_FALSE(outcome(rep, "reciprocity").ok);
    bool has_reason = false;
    for (const auto& n : outcome(rep, "reciprocity").notes) {
      if (n.find("error:") != std::string::npos) has_reason = true;
    }
    CHECK(has_reason);
    CHECK(outcome(rep, "wada").ok);
  }

  SUBCASE("missing declarations fail before any task runs") {
    Job j = parse_job_text("vars t ;\ntask wada { }\n");
    CHECK_THROWS_AS(run_job(j, RunOptions{}), ValidationError);
  }

  SUBCASE("a representation that breaks a relator is rejected") {
    Job j = parse_job_text(
        "vars t ;\n"
        "gens x y ;\n"
        "rel x y x^-1 y^-1 ;\n"
        "phi x = t ;\n"
        "phi y = 1 ;\n"
        "rho x = [[1, 1], [0, 1]] ;\n"
        "rho y = [[1, 0], [1, 1]] ;\n"
        "task wada { }\n");
    CHECK_THROWS_AS(run_job(j, RunOptions{}), ValidationError);
  }
}

TEST_CASE("randomized property tasks honor trials and seed") {
  Job job = parse_job_text(
      "task multiplicativity { trials = 5 ; max_dim = 4 ; }\n");
  RunOptions opts;
  opts.seed = 11;
  JobReport rep = run_job(job, opts);
  CHECK(rep.all_ok());
  CHECK(rep.tasks[0].notes.front().find("5/5") != std::string::npos);
  CHECK(rep.tasks[0].notes.front().find("seed 11") != std::string::npos);

  Job cj = parse_job_file(fixture("fig8.tors"));
  cj.tasks.clear();
  TaskDecl conj;
  conj.kind = "conjugation";
  conj.name = "conjugation";
  conj.trials = 3;
  cj.tasks.push_back(conj);
  JobReport crep = run_job(cj, RunOptions{});
  CHECK(crep.all_ok());
  CHECK(crep.tasks[0].notes.back().find("3/3") != std::string::npos);
}

TEST_CASE("reports render and round-trip") {
  Job job = parse_job_file(fixture("fig8.tors"));
  RunOptions opts;
  JobReport rep = run_job(job, opts);

  SUBCASE("text format lists one section per task with annotations") {
    std::string text = render_text(job, rep);
    CHECK(text.find("== wada ==") != std::string::npos);
    CHECK(text.find("[up to +- t^m]") != std::string::npos);
    CHECK(text.find("[up to sign]") != std::string::npos);
    CHECK(text.find("[exact]") != std::string::npos);
    CHECK(text.find("Delta = ") != std::string::npos);
    CHECK(text.find("T_lambda = ") != std::string::npos);
  }

  SUBCASE("empty task list renders an empty report") {
    Job empty;
    empty.tower = FieldTower::rationals();
    JobReport r = run_job(empty, RunOptions{});
    CHECK(r.tasks.empty());
    CHECK(r.all_ok());
  }

  SUBCASE("machine reports are byte-deterministic") {
    CHECK(render_json(job, rep) == render_json(job, run_job(job, opts)));
  }

  SUBCASE("machine reports round-trip the polynomials exactly") {
    std::string json = render_json(job, rep);
    auto polys = report_polynomials(json, job.tower);
    int matched = 0;
    for (const auto& [name, poly] : polys) {
      const TaskOutcome& t = outcome(rep, name);
      REQUIRE(t.poly.has_value());
      CHECK(poly == t.poly->lift_to(job.tower));
      ++matched;
    }
    CHECK(matched >= 4);  // wada, covering, alexander, complex_torsion, fibered
  }

  SUBCASE("round-trip keeps non-rational coefficients") {
    Job wj = parse_job_file(fixture("whitehead_point.tors"));
    JobReport wrep = run_job(wj, RunOptions{});
    std::string json = render_json(wj, wrep);
    auto polys = report_polynomials(json, wj.tower);
    bool saw_wada = false;
    for (const auto& [name, poly] : polys) {
      if (name == "wada") {
        saw_wada = true;
        CHECK(poly == outcome(wrep, "wada").poly->lift_to(wj.tower));
      }
    }
    CHECK(saw_wada);
  }
}

TEST_CASE("command-line driver end to end") {
  const std::string exe = TORSIONLAB_CLI_PATH;
  const std::string out_path = "cli_test_report.json";

  SUBCASE("json report written to a file, exit 0") {
    std::string cmd = exe + " compute " + fixture("fig8.tors") +
                      " --task wada --format json --output " + out_path;
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in(out_path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    Job job = parse_job_file(fixture("fig8.tors"));
    auto polys = report_polynomials(buf.str(), job.tower);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].first == "wada");
    TowerPtr q = FieldTower::rationals();
    CHECK(unit_equivalent(polys[0].second,
                          uni(q, {1, -6, 6, -1}).lift_to(job.tower))
              .has_value());
    std::remove(out_path.c_str());
  }

  SUBCASE("unknown task name exits nonzero") {
    std::string cmd =
        exe + " compute " + fixture("fig8.tors") + " --task nosuch 2>/dev/null";
    CHECK(std::system(cmd.c_str()) != 0);
  }

  SUBCASE("parse errors exit nonzero") {
    const std::string bad_path = "cli_test_bad.tors";
    std::ofstream bad(bad_path);
    bad << "vars t ;\nbogus a ;\n";
    bad.close();
    std::string cmd = exe + " compute " + bad_path + " 2>/dev/null";
    CHECK(std::system(cmd.c_str()) != 0);
    std::remove(bad_path.c_str());
  }
}
