#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "relic/cli.hpp"
#include "relic/cube.hpp"
#include "relic/structure.hpp"

using namespace relic;

namespace {

// Self-contained fixture directory; every file the CLI reads is written here.
class TempDir {
 public:
  TempDir() {
    dir_ = std::filesystem::temp_directory_path() / "relic_cli_test";
    std::filesystem::create_directories(dir_);
  }
  std::string write(const std::string& name, const std::string& content) {
    std::string path = (dir_ / name).string();
    std::ofstream(path) << content;
    return path;
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }

 private:
  std::filesystem::path dir_;
};

const char* kNCubesFam =
    "family ncubes\n"
    "kind generator\n"
    "generator ncube disjoint=true\n"
    "end\n";

const char* kOrderNoMax =
    "(forall x. forall y. forall z. ((Lt(x,y) & Lt(y,z)) -> Lt(x,z)))\n"
    "& (forall x. !Lt(x,x))\n"
    "& (forall x. exists y. Lt(x,y))\n";

}  // namespace

TEST_CASE("cli: closure of the disjoint cube family") {
  TempDir tmp;
  std::string fam = tmp.write("ncubes.fam", kNCubesFam);
  CliResult res = run_cli({"closure", "--family", fam, "--op", "e"});
  CHECK(res.status == 0);
  CHECK(res.out ==
        "family: ncubes (infinite)\n"
        "added: T0inf\n"
        "idempotent: yes\n"
        "rule: disjoint-language-limits\n");
  CHECK(res.err.empty());
}

TEST_CASE("cli: pair type count of two disjoint cubes") {
  TempDir tmp;
  Structure s = disjoint_sum(make_ncube(3), make_ncube(3));
  s.name = "q3x2";
  std::string path = tmp.write("q3x2.struct", render_structure(s));
  CliResult res = run_cli({"types", "--structure", path, "-n", "2"});
  CHECK(res.status == 0);
  CHECK(res.out ==
        "structure: q3x2 (size 16)\n"
        "m_2 = 5\n");
}

TEST_CASE("cli: model search reports a bounded verdict with status 2") {
  TempDir tmp;
  std::string fol = tmp.write("order_nomax.fol", kOrderNoMax);
  CliResult res = run_cli({"find-model", "--formula", "@" + fol, "--spectrum", "6"});
  CHECK(res.status == 2);
  CHECK(res.out == "no finite model up to 6\n");

  // The same sentence minus the no-maximum axiom has small models.
  CliResult sat = run_cli({"find-model", "--formula",
                           "(forall x. !Lt(x,x)) & (exists x. exists y. Lt(x,y))",
                           "--spectrum", "4"});
  CHECK(sat.status == 0);
  CHECK(sat.out == "finite models at sizes: 2 3 4\n");
}

TEST_CASE("cli: evaluation and the exit trichotomy") {
  TempDir tmp;
  Structure q2 = make_ncube(2);
  q2.name = "q2";
  std::string path = tmp.write("q2.struct", render_structure(q2));

  CliResult yes = run_cli({"eval", "--structure", path, "--formula",
                           "forall x. exists y. R(x,y)"});
  CHECK(yes.status == 0);
  CHECK(yes.out ==
        "structure: q2 (size 4)\n"
        "value: true\n");

  // Free variables are an input error, not a false answer.
  CliResult open = run_cli({"eval", "--structure", path, "--formula", "R(x,y)"});
  CHECK(open.status == 1);
  CHECK(open.out.empty());
  CHECK(open.err.find("free variables") != std::string::npos);

  CliResult missing = run_cli({"eval", "--structure", path + ".nope", "--formula", "x = x"});
  CHECK(missing.status == 1);

  CliResult unknown = run_cli({"eval", "--structure", path, "--formula", "x = x", "--bogus"});
  CHECK(unknown.status == 1);

  CliResult format = run_cli({"--format", "json", "eval", "--structure", path,
                              "--formula", "forall x. x = x"});
  CHECK(format.status == 1);
}

TEST_CASE("cli: spectrum statuses separate exact from lower bounds") {
  TempDir tmp;
  std::string disjoint = tmp.write("ncubes.fam", kNCubesFam);
  std::string shared = tmp.write("shared.fam",
                                 "family shared\n"
                                 "kind generator\n"
                                 "generator ncube disjoint=false\n"
                                 "end\n");

  CliResult exact = run_cli({"spectrum", "--family", disjoint, "--class", "all"});
  CHECK(exact.status == 0);
  CHECK(exact.out.find("= 1 (exact)") != std::string::npos);
  CHECK(exact.out.find("witness: T0inf") != std::string::npos);

  CliResult lower = run_cli({"spectrum", "--family", shared, "--class", "all"});
  CHECK(lower.status == 2);
  CHECK(lower.out.find("= 1 (at least)") != std::string::npos);
  CHECK(lower.out.find("candidate: Limit(omega_cube)") != std::string::npos);
}

TEST_CASE("cli: cardinality arithmetic") {
  CliResult sg = run_cli({"cardset", "--semigroup", "2,3", "--bound", "8"});
  CHECK(sg.status == 0);
  CHECK(sg.out == "members: 2 3 4 5 6 7 8\n");

  CliResult rec = run_cli({"cardset", "--recover", "3,5", "--bound", "20"});
  CHECK(rec.status == 0);
  CHECK(rec.out.find("inconsistent:") == 0);

  CliResult val = run_cli({"cardset", "--validate", "3,6,9", "--complete"});
  CHECK(val.status == 0);
  CHECK(val.out == "ok: k0 = 3\n");

  CliResult comp = run_cli({"cardset", "--complement-of", "2Z+"});
  CHECK(comp.status == 0);
  CHECK(comp.out.find("c_bar = Z+ \\ 2Z+") != std::string::npos);

  CliResult both = run_cli({"cardset", "--semigroup", "2", "--recover", "2", "--bound", "9"});
  CHECK(both.status == 1);
}

TEST_CASE("cli: semi-isolation classes of unlinked blocks") {
  TempDir tmp;
  std::string path = tmp.write("blocks.struct",
                               "structure blocks23\n"
                               "signature R/2\n"
                               "universe 5\n"
                               "rel R: (0,1) (1,0) (2,3) (3,2) (2,4) (4,2) (3,4) (4,3)\n"
                               "end\n");
  CliResult res = run_cli({"semiisolate", "--structure", path});
  CHECK(res.status == 0);
  CHECK(res.out ==
        "structure: blocks23 (size 5)\n"
        "q: 5\n"
        "selected: 0 1 2 3 4\n"
        "equivalence: yes\n"
        "class sizes: 2 3\n"
        "chat = <2,3>\n");
}

TEST_CASE("cli: output is byte-stable across runs") {
  TempDir tmp;
  std::string fam = tmp.write("ncubes.fam", kNCubesFam);
  CliResult a = run_cli({"closure", "--family", fam, "--op", "e"});
  CliResult b = run_cli({"closure", "--family", fam, "--op", "e"});
  CHECK(a.out == b.out);
  CHECK(a.status == b.status);

  CliResult help = run_cli({"--help"});
  CHECK(help.status == 0);
  CHECK(help.out.find("closure") != std::string::npos);
}
