#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "coxinv/error.hpp"
#include "coxinv/report.hpp"
#include "oracles/frozen.hpp"

using namespace coxinv;

namespace {

std::filesystem::path data(const std::string& name) { return std::filesystem::path(COXINV_TEST_DATA) / name; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Internal;
}

ReportOptions quick() {
  ReportOptions o;
  o.depth = 14;
  o.p_grid = {Rational(2), Rational(5, 2)};
  return o;
}

}  // namespace

TEST(Input, Parsing) {
  const auto in = load_input(data("pentagon_fuchsian.json"));
  EXPECT_EQ(in.matrix, systems::right_angled_polygon(5));
  ASSERT_TRUE(in.thickness);
  EXPECT_EQ(in.thickness->values, (std::vector<std::int64_t>(5, 2)));
  ASSERT_TRUE(in.lambda);
  EXPECT_TRUE(in.lambda->bourdon);
  EXPECT_EQ(in.apartment_confdim, 1.0);

  const auto shorthand = parse_input(R"({"gens": ["a", "b"], "m": [[1, "inf"], ["inf", 1]], "thickness": 3})");
  EXPECT_EQ(shorthand.thickness->values, (std::vector<std::int64_t>{3, 3}));
  EXPECT_FALSE(load_input(data("path.json")).thickness);
}

TEST(Input, Errors) {
  EXPECT_EQ(kind_of([] { load_input(data("malformed.json")); }), ErrorKind::AsymmetryError);
  EXPECT_EQ(kind_of([] { load_input(data("not_json.json")); }), ErrorKind::SchemaError);
  EXPECT_EQ(kind_of([] { load_input(data("absent.json")); }), ErrorKind::SchemaError);
  EXPECT_EQ(kind_of([] { load_input(data("triangle_333_unequal.json")); }), ErrorKind::ThicknessClassError);
  EXPECT_EQ(kind_of([] {
              parse_input(R"({"gens": ["a", "b"], "m": [[1, 3], [3, 1]], "thickness": {"a": 2, "x": 2}})");
            }),
            ErrorKind::UnknownGenerator);
  EXPECT_EQ(kind_of([] { parse_input(R"({"gens": ["a", "b"], "m": [[1, 3], [3, 1]], "lambda": 0.5})"); }),
            ErrorKind::BadEntry);
}

TEST(Input, Rationals) {
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("2.5"), Rational(5, 2));
  EXPECT_EQ(parse_rational(" 4/2 "), Rational(2));
  EXPECT_EQ(parse_rational("4/2").get_str(), "2");
  EXPECT_EQ(kind_of([] { parse_rational("two"); }), ErrorKind::BadEntry);
  EXPECT_EQ(kind_of([] { parse_rational("1/0"); }), ErrorKind::BadEntry);
  EXPECT_EQ(parse_p_grid("3/2,2,2.25"), (std::vector<Rational>{Rational(3, 2), Rational(2), Rational(9, 4)}));
  EXPECT_EQ(kind_of([] { parse_p_grid("1,2"); }), ErrorKind::BadEntry);
  EXPECT_TRUE(parse_lambda("bourdon").bourdon);
  EXPECT_EQ(*parse_lambda("2.5").value, 2.5);
  EXPECT_EQ(kind_of([] { parse_lambda("2x"); }), ErrorKind::BadEntry);
}

TEST(Report, MachineRoundTrip) {
  const auto in = load_input(data("pentagon_fuchsian.json"));
  const auto r = cmd_report(in, quick());
  const auto text = r.to_machine();
  const auto back = parse_machine(text);
  EXPECT_EQ(back, r);
  EXPECT_EQ(back.to_machine(), text);
  EXPECT_EQ(kind_of([] { parse_machine("{not json"); }), ErrorKind::SchemaError);
}

TEST(Report, SectionsAndValues) {
  const auto in = load_input(data("pentagon_fuchsian.json"));
  const auto r = cmd_report(in, quick());
  std::vector<std::string> keys;
  for (const auto& [k, v] : r.root.fields) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"tool", "input", "classification", "nerve", "growth", "exponents",
                                            "confdim", "oracle", "notes"}));
  const auto* cls = r.root.find("classification");
  ASSERT_TRUE(cls);
  EXPECT_EQ(cls->find("summary")->text, "infinite, non-affine, hyperbolic");
  const auto* exps = r.root.find("exponents");
  EXPECT_NEAR(exps->find("p_homology")->number.value, 1 + frozen::pentagon_rate_q2(), 1e-6);
  EXPECT_NEAR(exps->find("p_cohomology")->number.value, 1 + 1 / frozen::pentagon_rate_q2(), 1e-6);
  const auto* grid = exps->find("p_grid");
  ASSERT_EQ(grid->items.size(), 2u);
  EXPECT_EQ(grid->items[0].find("verdict")->text, "Diverges");
  EXPECT_EQ(grid->items[1].find("verdict")->text, "Converges");
  const auto* cd = r.root.find("confdim");
  EXPECT_NEAR(cd->find("lower")->number.value, cd->find("upper")->number.value, 1e-9);
  EXPECT_EQ(r.root.find("oracle")->kind, ReportValue::Kind::Null);
  EXPECT_EQ(r.root.find("nerve")->find("vcd")->find("vcd")->integer, 2);
}

TEST(Report, SkippedSectionsAndNotes) {
  const auto finite = cmd_report(load_input(data("a2.json")), quick());
  const auto* notes = finite.root.find("notes");
  ASSERT_TRUE(notes);
  ASSERT_FALSE(notes->items.empty());
  EXPECT_EQ(notes->items[0].text, "finite Weyl group: all higher invariants trivial");

  const auto affine = cmd_report(load_input(data("triangle_333.json")), quick());
  const auto* cd = affine.root.find("confdim");
  ASSERT_TRUE(cd->find("skipped"));
  EXPECT_EQ(cd->find("skipped")->text.rfind("NotHyperbolic", 0), 0u);
  const auto* ex = affine.root.find("exponents");
  EXPECT_TRUE(ex->find("p_cohomology")->number.infinite);

  const auto path = cmd_report(load_input(data("path.json")), quick());
  EXPECT_FALSE(path.root.find("exponents"));
}

TEST(Report, DeterministicAndCacheTransparent) {
  const auto in = load_input(data("pentagon.json"));
  auto opts = quick();
  const auto first = cmd_report(in, opts).to_machine();
  EXPECT_EQ(cmd_report(in, opts).to_machine(), first);

  const auto dir = std::filesystem::temp_directory_path() / "coxinv-report-cache";
  std::filesystem::remove_all(dir);
  opts.cache_dir = dir;
  EXPECT_EQ(cmd_report(in, opts).to_machine(), first);  // miss, store
  EXPECT_TRUE(std::filesystem::exists(dir / "enumeration.cache"));
  EXPECT_EQ(cmd_report(in, opts).to_machine(), first);  // hit

  opts.limits.parallel = true;
  opts.limits.threads = 4;
  opts.cache_dir.reset();
  EXPECT_EQ(cmd_report(in, opts).to_machine(), first);
}

TEST(Report, TextFormat) {
  const auto in = load_input(data("dihedral_inf.json"));
  const auto text = single_section(in, "classification", cmd_classify(in)).to_text();
  EXPECT_NE(text.find("classification"), std::string::npos);
  EXPECT_NE(text.find("hyperbolic"), std::string::npos);
}

TEST(Report, OracleSection) {
  auto opts = quick();
  opts.radius = 3;
  opts.oracle_trials = 20;
  const auto o = cmd_verify_oracle(load_input(data("pentagon.json")), opts);
  EXPECT_TRUE(o.find("all_ok")->flag);
  EXPECT_EQ(o.find("chambers")->integer, 1 + 10 + 60 + 320);
  EXPECT_EQ(kind_of([&] { cmd_verify_oracle(load_input(data("triangle_333.json")), opts); }),
            ErrorKind::NotRightAngled);
}
