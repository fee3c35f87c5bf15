#include "commands.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(std::initializer_list<std::string> args) {
  std::vector<std::string> owned{"cha"};
  owned.insert(owned.end(), args);
  std::vector<const char *> argv;
  for (const auto &a : owned) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = cha::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<cha::cli::ResultRow> rows_of(const std::string &csv) {
  std::istringstream in(csv);
  return cha::cli::read_csv(in);
}

std::filesystem::path temp_path(const std::string &name) {
  const char *dir = std::getenv("CHA_TEST_TMP");
  return std::filesystem::path(dir != nullptr ? dir : ".") / name;
}

std::string write_file(const std::string &name, const std::string &text) {
  const auto path = temp_path(name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CommaPoint : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

} // namespace

TEST_CASE("solve reproduces reference values") {
  const auto a = run({"solve", "--n", "2", "--l", "1", "--m", "0", "--rc", "1"});
  REQUIRE(a.code == 0);
  const auto ra = rows_of(a.out);
  REQUIRE(ra.size() == 1);
  CHECK_THAT(ra[0].I_r, WithinRel(80.94182631, 1e-9));
  CHECK(ra[0].error.empty());
  CHECK(ra[0].grid_size_used >= 128);

  const auto b = rows_of(run({"solve", "--n", "2", "--l", "1", "--m", "1", "--rc", "10"}).out);
  CHECK_THAT(b[0].I_r, WithinRel(0.6653371253, 1e-9));

  const auto c = rows_of(run({"solve", "--n", "1", "--l", "0", "--rc", "50"}).out);
  CHECK_THAT(c[0].I_r, WithinRel(4.0, 1e-8));
  CHECK_THAT(c[0].I_p, WithinRel(12.0, 1e-8));
  CHECK_THAT(c[0].E, WithinAbs(-0.5, 1e-10));
}

TEST_CASE("csv header names every field") {
  const auto a = run({"solve", "--n", "2", "--l", "1", "--rc", "1"});
  const auto header = a.out.substr(0, a.out.find('\n'));
  std::string expected;
  for (const auto &f : cha::cli::row_fields()) {
    expected += (expected.empty() ? "" : ",") + std::string(f);
  }
  CHECK(header == expected);
  for (const char *name : {"n", "l", "m", "Z", "r_c", "E", "I_r", "I_p", "I_t", "lower_bound", "upper_bound",
                           "norm_deficit", "grid_size_used", "error"}) {
    CHECK_THAT(header, ContainsSubstring(name));
  }
}

TEST_CASE("numbers carry twelve significant digits") {
  CHECK(cha::cli::format_number(80.94182631512345) == "80.9418263151");
  CHECK(cha::cli::format_number(1.0) == "1");
  CHECK(cha::cli::format_number(-0.0) == "0");
  CHECK(cha::cli::format_number(1.5e-15) == "1.5e-15");
}

TEST_CASE("scan with one radius equals solve") {
  const auto s = run({"solve", "--n", "3", "--l", "2", "--m", "1", "--rc", "2.5"});
  const auto sc = run({"scan", "--n", "3", "--l", "2", "--m", "1", "--rc-list", "2.5"});
  REQUIRE(sc.code == 0);
  CHECK(s.out == sc.out);
}

TEST_CASE("scan ordering and determinism") {
  const auto a = run({"scan", "--n", "2", "--l", "1", "--rc-list", "5,0.5,1", "--z-list", "2,1"});
  REQUIRE(a.code == 0);
  const auto rows = rows_of(a.out);
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto &p = rows[i - 1];
    const auto &q = rows[i];
    const bool ordered = p.m < q.m || (p.m == q.m && (p.Z < q.Z || (p.Z == q.Z && p.r_c < q.r_c)));
    CHECK(ordered);
  }
  const auto b = run({"scan", "--n", "2", "--l", "1", "--rc-list", "5,0.5,1", "--z-list", "2,1"});
  CHECK(a.out == b.out);
}

TEST_CASE("csv and json round trips") {
  const auto a = run({"scan", "--n", "3", "--l", "2", "--rc-list", "0.3,10"});
  REQUIRE(a.code == 0);
  const auto rows = rows_of(a.out);
  std::ostringstream again;
  cha::cli::write_csv(again, rows);
  CHECK(again.str() == a.out);
  // Twelve printed digits bound the product of two rounded values.
  for (const auto &r : rows) {
    CHECK_THAT(r.I_t, WithinRel(r.I_r * r.I_p, 1.5e-11));
  }
  cha::cli::RunRequest req;
  req.n = 3;
  req.l = 2;
  req.rc_list = {0.3, 10.0};
  for (const auto &r : cha::cli::cmd_scan(req)) {
    CHECK_THAT(r.I_t, WithinRel(r.I_r * r.I_p, 1e-12));
  }

  const auto j = run({"scan", "--n", "3", "--l", "2", "--rc-list", "0.3,10", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("meta").contains("version"));
  CHECK(doc.at("meta").at("config").at("grid_size") == 128);
  const auto back = cha::cli::rows_from_json(doc);
  std::ostringstream via_json;
  cha::cli::write_csv(via_json, back);
  CHECK(via_json.str() == a.out);
}

TEST_CASE("output file") {
  const auto path = temp_path("solve_out.csv");
  std::filesystem::remove(path);
  const auto a = run({"solve", "--n", "2", "--l", "1", "--rc", "1", "--out", path.string()});
  REQUIRE(a.code == 0);
  CHECK(a.out.empty());
  CHECK(read_file(path) == run({"solve", "--n", "2", "--l", "1", "--rc", "1"}).out);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"solve", "--n", "2", "--l", "1", "--rc", "1", "--bogus"}).code == 1);
  CHECK(run({"solve", "--n", "2", "--l", "2", "--rc", "1"}).code == 1);
  CHECK(run({"solve", "--n", "2", "--l", "1", "--m", "2", "--rc", "1"}).code == 1);
  CHECK(run({"solve", "--n", "2", "--l", "1", "--rc", "-1"}).code == 1);
  CHECK(run({"solve", "--n", "2", "--l", "1", "--rc", "1", "--format", "xml"}).code == 1);
  CHECK(run({"table", "--preset", "7i"}).code == 1);
  const auto cfg = write_file("unknown.cfg", "grid_size = 128\ncolour = blue\n");
  const auto bad = run({"solve", "--n", "2", "--l", "1", "--rc", "1", "--config", cfg});
  CHECK(bad.code == 1);
  CHECK_THAT(bad.err, ContainsSubstring("colour"));
  CHECK(run({"solve", "--n", "2", "--l", "1", "--rc", "1", "--config", "/nonexistent/x.cfg"}).code == 1);
}

TEST_CASE("config file is honoured") {
  // The default schedule runs through powers of two from 128; this one cannot.
  const auto cfg = write_file("odd.cfg", "# odd schedule\ngrid_size = 96\ngrid_max = 768\n");
  const auto a = rows_of(run({"solve", "--n", "2", "--l", "1", "--rc", "1", "--config", cfg}).out);
  REQUIRE(a.size() == 1);
  CHECK(a[0].grid_size_used % 96 == 0);
  const auto fixed = write_file("fixed.cfg", "grid_size = 96\ngrid_max = 96\n");
  const auto b = run({"solve", "--n", "2", "--l", "1", "--rc", "1", "--config", fixed});
  CHECK(b.code == 2);
  CHECK_THAT(b.err, ContainsSubstring("no room to refine"));
}

TEST_CASE("solver and verification failures") {
  const auto cfg = write_file("tiny.cfg", "grid_size = 16\ngrid_max = 32\n");
  const auto s = run({"solve", "--n", "10", "--l", "1", "--rc", "10", "--config", cfg});
  CHECK(s.code == 2);
  CHECK_FALSE(s.err.empty());

  const auto sc = run({"scan", "--n", "10", "--l", "1", "--m", "1", "--rc-list", "10", "--config", cfg});
  CHECK(sc.code == 2);
  CHECK_THAT(sc.err, ContainsSubstring("1 of 1 scan points failed"));
  const auto rows = rows_of(sc.out);
  REQUIRE(rows.size() == 1);
  CHECK_FALSE(rows[0].error.empty());
  CHECK(std::isnan(rows[0].I_r));

  // Every verification state fails to converge on a single 16-point grid.
  const auto frozen = write_file("frozen.cfg", "grid_size = 16\ngrid_max = 16\n");
  const auto v = run({"verify", "--config", frozen});
  CHECK(v.code == 3);
  CHECK_THAT(v.out, ContainsSubstring("FAIL"));
  const auto ok = run({"verify", "--verify-level", "fast"});
  CHECK(ok.code == 0);
  CHECK_THAT(ok.out, ContainsSubstring("bound_chain,pass"));
  CHECK_FALSE(Catch::Matchers::ContainsSubstring("FAIL").match(ok.out));
}

TEST_CASE("free rows use the closed forms") {
  const auto a = run({"free", "--n", "2", "--l", "1"});
  REQUIRE(a.code == 0);
  const auto rows = rows_of(a.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].I_r == 1.0);
  CHECK(rows[0].I_p == 120.0);
  CHECK(rows[1].I_r == 0.5);
  CHECK(rows[1].I_p == 64.0);
  CHECK(std::isinf(rows[0].r_c));
}

TEST_CASE("table rendering") {
  const auto a = run({"table", "--preset", "2p"});
  REQUIRE(a.code == 0);
  for (const char *text : {"I_r", "I_p", "I_t", "lower bound", "r_c=0.1", "r_c=10", "80.94182631"}) {
    CHECK_THAT(a.out, ContainsSubstring(text));
  }
}

TEST_CASE("dump writes both grids") {
  const auto prefix = temp_path("dump2p").string();
  REQUIRE(run({"dump", "--n", "2", "--l", "1", "--rc", "1", "--out", prefix}).code == 0);
  std::istringstream r_text(read_file(prefix + ".r.csv"));
  std::istringstream p_text(read_file(prefix + ".p.csv"));
  std::string line;
  std::getline(r_text, line);
  CHECK(line == "r,u");
  std::vector<std::pair<double, double>> r_rows;
  while (std::getline(r_text, line)) {
    const auto comma = line.find(',');
    r_rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  REQUIRE(r_rows.size() >= 128);
  CHECK(r_rows.front().first == 0.0);
  CHECK(r_rows.front().second == 0.0);
  CHECK(r_rows.back().first == 1.0);
  CHECK(r_rows.back().second == 0.0);

  std::getline(p_text, line);
  CHECK(line == "p,P");
  std::vector<std::pair<double, double>> p_rows;
  while (std::getline(p_text, line)) {
    const auto comma = line.find(',');
    p_rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  REQUIRE(p_rows.size() > 10);
  // P(p) / p tends to a constant for a p state.
  const double s0 = p_rows[0].second / p_rows[0].first;
  const double s1 = p_rows[1].second / p_rows[1].first;
  CHECK_THAT(s1, WithinRel(s0, 1e-2));

  const auto one = run({"dump", "--n", "1", "--l", "0", "--rc", "1"});
  REQUIRE(one.code == 0);
  CHECK(one.out.rfind("r,u\n", 0) == 0);
  CHECK_THAT(one.out, ContainsSubstring("\np,P\n"));
}

TEST_CASE("output does not depend on the global locale") {
  const auto before = run({"solve", "--n", "2", "--l", "1", "--rc", "0.5"});
  const auto saved = std::locale::global(std::locale(std::locale::classic(), new CommaPoint));
  const auto during = run({"solve", "--n", "2", "--l", "1", "--rc", "0.5"});
  const auto json = run({"solve", "--n", "2", "--l", "1", "--rc", "0.5", "--format", "json"});
  const auto rows = rows_of(during.out);
  std::locale::global(saved);
  CHECK(before.out == during.out);
  REQUIRE(rows.size() == 1);
  CHECK_THAT(rows[0].r_c, WithinRel(0.5, 1e-15));
  CHECK_THAT(json.out, ContainsSubstring("\"r_c\": 0.5"));
}
