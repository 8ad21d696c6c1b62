#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "golden.hpp"
#include "knot/cli.hpp"

#ifndef KNOTCENSUS_BIN
#define KNOTCENSUS_BIN "knotcensus"
#endif

using namespace knot;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("knot_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const fs::path& dir) {
  fs::path so = dir / "stdout.txt";
  std::string cmd = std::string("\"") + KNOTCENSUS_BIN + "\" " + args + " > \"" + so.string() + "\" 2> \"" +
                    (dir / "stderr.txt").string() + "\"";
  int rc = std::system(cmd.c_str());
  std::ifstream in(so);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Sheet sheet(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return read_sheet(in);
}

std::string cell(const Sheet& sh, std::size_t row, const std::string& col) {
  for (std::size_t i = 0; i < sh.header.size(); ++i)
    if (sh.header[i] == col) return std::get<std::string>(sh.rows.at(row)[i]);
  throw std::runtime_error("no column " + col);
}

}  // namespace

TEST_CASE("sheets round trip through csv and json") {
  Sheet sh;
  sh.header = {"a", "b"};
  sh.rows.push_back({7LL, std::string("{(1,4),(3,6),(5,2)}")});
  sh.rows.push_back({-1LL, std::string("say \"hi\"")});
  for (const char* fmt : {"csv", "json"}) {
    std::stringstream ss;
    write_sheet(ss, sh, fmt);
    Sheet back = read_sheet(ss);
    CHECK(back.header == sh.header);
    REQUIRE(back.rows.size() == 2);
    CHECK(std::get<std::string>(back.rows[0][0]) == "7");
    CHECK(std::get<std::string>(back.rows[0][1]) == "{(1,4),(3,6),(5,2)}");
    CHECK(std::get<std::string>(back.rows[1][1]) == "say \"hi\"");
  }
  std::stringstream bad("a,b\n1\n");
  CHECK_THROWS_AS(read_sheet(bad), DataError);
}

TEST_CASE("census writes counts and knots") {
  fs::path d = scratch("census");
  Run r = run("census --max-crossings 7 --out \"" + d.string() + "\"", d);
  REQUIRE(r.status == 0);
  Sheet c = sheet(d / "counts.csv");
  CHECK(c.header == std::vector<std::string>{"crossings", "survivors"});
  REQUIRE(c.rows.size() == 5);
  CHECK(cell(c, 0, "survivors") == "1");
  CHECK(cell(c, 1, "survivors") == "1");
  CHECK(cell(c, 2, "survivors") == "2");
  CHECK(fs::exists(d / "census.journal"));
  Sheet k = sheet(d / "knots.csv");
  CHECK(k.header == std::vector<std::string>{"order", "crossings", "name"});
  CHECK(cell(k, 0, "name") == "{}");
  CHECK(cell(k, 1, "name") == golden::at(1).text);
  CHECK(cell(k, 2, "name") == golden::at(2).text);
  fs::remove_all(d);
}

TEST_CASE("census at cutoff 3 lists the unknot and the trefoil") {
  fs::path d = scratch("c3");
  REQUIRE(run("census --max-crossings 3 --out \"" + d.string() + "\"", d).status == 0);
  Sheet k = sheet(d / "knots.csv");
  REQUIRE(k.rows.size() == 2);
  CHECK(cell(k, 0, "order") == "0");
  CHECK(cell(k, 1, "order") == "1");
  CHECK(cell(k, 1, "name") == "{(1,4),(3,6),(5,2)}");
  fs::remove_all(d);
}

TEST_CASE("reruns and resumes give identical files") {
  fs::path a = scratch("ra"), b = scratch("rb");
  REQUIRE(run("census --max-crossings 7 --out \"" + a.string() + "\"", a).status == 0);
  REQUIRE(run("census --max-crossings 7 --out \"" + b.string() + "\"", b).status == 0);
  for (const char* f : {"counts.csv", "knots.csv", "census.journal"}) CHECK(slurp(a / f) == slurp(b / f));

  // interrupt: keep the first half of the journal and resume
  std::string journal = slurp(a / "census.journal");
  {
    std::ofstream os(b / "census.journal", std::ios::binary | std::ios::trunc);
    os << journal.substr(0, journal.size() / 2);
  }
  fs::remove(b / "counts.csv");
  REQUIRE(run("census --max-crossings 7 --resume --workers 2 --out \"" + b.string() + "\"", b).status == 0);
  for (const char* f : {"counts.csv", "knots.csv", "census.journal"}) CHECK(slurp(a / f) == slurp(b / f));

  // a journal for another cutoff is a data error
  CHECK(run("census --max-crossings 6 --resume --out \"" + b.string() + "\"", b).status == 2);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("csv and json carry the same data") {
  fs::path a = scratch("fa"), b = scratch("fb");
  REQUIRE(run("census --max-crossings 6 --out \"" + a.string() + "\"", a).status == 0);
  REQUIRE(run("census --max-crossings 6 --format json --out \"" + b.string() + "\"", b).status == 0);
  for (const char* f : {"counts", "knots"}) {
    Sheet x = sheet(a / (std::string(f) + ".csv")), y = sheet(b / (std::string(f) + ".json"));
    CHECK(x.header == y.header);
    CHECK(x.rows == y.rows);
  }
  REQUIRE(run("invariants --knots \"" + (a / "knots.csv").string() + "\" --out \"" + a.string() + "\"", a).status == 0);
  REQUIRE(run("invariants --knots \"" + (b / "knots.json").string() + "\" --format json --out \"" + b.string() + "\"", b)
              .status == 0);
  Sheet x = sheet(a / "invariants.csv"), y = sheet(b / "invariants.json");
  CHECK(x.header == y.header);
  CHECK(x.rows == y.rows);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("invariants reproduce the grid for the first orders") {
  fs::path d = scratch("inv");
  {
    std::ofstream os(d / "in.csv");
    os << "order,crossings,name\n";
    for (int o = 0; o <= 4; ++o) os << o << "," << golden::at(o).crossings << ",\"" << golden::at(o).text << "\"\n";
  }
  REQUIRE(run("invariants --knots \"" + (d / "in.csv").string() + "\" --linear-max 7 --out \"" + d.string() + "\"", d)
              .status == 0);
  Sheet sh = sheet(d / "invariants.csv");
  REQUIRE(sh.rows.size() == 5);
  const std::vector<std::string> cols{"[3,1]", "[5,1]", "[5,2]", "[7,1]", "[7,2]", "[7,3]"};
  for (int o = 0; o <= 4; ++o)
    for (std::size_t i = 0; i < cols.size(); ++i) CHECK(cell(sh, o, cols[i]) == std::to_string(golden::at(o).grid[i]));
  CHECK(cell(sh, 1, "characteristic") == "(s^3+3s^2+3s+2)(s+1)^-3");
  CHECK(cell(sh, 0, "characteristic") == "1");
  CHECK(cell(sh, 3, "Test 2") == "0");
  CHECK(std::find(sh.header.begin(), sh.header.end(), "Test 11") != sh.header.end());

  // no tables, larger modulus
  REQUIRE(run("invariants --knots \"" + (d / "in.csv").string() + "\" --linear-max 9 --tables none --out \"" +
                  d.string() + "\"",
              d)
              .status == 0);
  Sheet nt = sheet(d / "invariants.csv");
  CHECK(nt.header.back() == "[9,4]");

  // empty list
  {
    std::ofstream os(d / "empty.csv");
    os << "order,crossings,name\n";
  }
  REQUIRE(run("invariants --knots \"" + (d / "empty.csv").string() + "\" --out \"" + d.string() + "\"", d).status == 0);
  CHECK(sheet(d / "invariants.csv").rows.empty());
  fs::remove_all(d);
}

TEST_CASE("invariants from a census journal") {
  fs::path d = scratch("st");
  REQUIRE(run("census --max-crossings 5 --out \"" + d.string() + "\"", d).status == 0);
  REQUIRE(run("invariants --state \"" + (d / "census.journal").string() + "\" --max-crossings 5 --out \"" + d.string() +
                  "\"",
              d)
              .status == 0);
  Sheet sh = sheet(d / "invariants.csv");
  CHECK(sh.rows.size() == sheet(d / "knots.csv").rows.size());
  fs::remove_all(d);
}

TEST_CASE("reduce") {
  fs::path d = scratch("red");
  Run a = run("reduce \"{(1,4),(3,6),(2,5)}\"", d);
  CHECK(a.status == 0);
  CHECK(a.out == "{}\n");
  Run t = run("reduce \"{(1,4),(3,6),(5,2)}\"", d);
  CHECK(t.status == 0);
  CHECK(t.out == "{(1,4),(3,6),(5,2)}\n");
  CHECK(run("reduce \"{}\"", d).out == "{}\n");
  fs::remove_all(d);
}

TEST_CASE("exit codes") {
  fs::path d = scratch("exit");
  CHECK(run("", d).status == 1);
  CHECK(run("frobnicate", d).status == 1);
  CHECK(run("census --max-crossings nope", d).status == 1);
  CHECK(run("invariants --linear-max 8 --knots x", d).status == 1);
  CHECK(run("--help", d).status == 0);
  CHECK(run("reduce \"{(1,4\"", d).status == 2);
  CHECK(run("reduce \"{(1,4),(3,6),(5,8),(7,10),(9,2)}\"", d).status == 2);
  CHECK(run("invariants --knots \"" + (d / "missing.csv").string() + "\" --out \"" + d.string() + "\"", d).status == 2);
  CHECK(run("invariants --out \"" + d.string() + "\"", d).status == 2);
  {
    std::ofstream os(d / "bad.csv");
    os << "order,crossings,name\n1,3,\"{(1,3)}\"\n";
  }
  CHECK(run("invariants --knots \"" + (d / "bad.csv").string() + "\" --out \"" + d.string() + "\"", d).status == 2);
  {
    std::ofstream os(d / "census.journal");
    os << "# cutoff 5\nN 1 garbage\nP 3 3 2 1\n";
  }
  CHECK(run("census --max-crossings 5 --resume --out \"" + d.string() + "\"", d).status == 2);
  fs::remove_all(d);
}
