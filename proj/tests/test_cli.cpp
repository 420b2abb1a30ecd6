#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "darboux/cli.hpp"
#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "darboux");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = darboux::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(DARBOUX_TEST_DATA) + "/" + name; }

std::string line(const Outcome& o) {
  std::string s = o.out;
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

nlohmann::json json_of(const Outcome& o) { return nlohmann::json::parse(o.out); }

const char* kSquare = R"({"points": [[0,0],[1,0],[1,1],[0,1],[0,0]]})";

}  // namespace

TEST_CASE("knot invariants through the CLI") {
  auto r = run({"knot", "--pd", data("trefoil.json"), "--invariant", "jones"});
  CHECK(r.code == 0);
  CHECK(line(r) == "-t^-4 + t^-3 + t^-1");

  auto j = run({"--format", "json", "knot", "--pd", data("trefoil.json"), "--invariant", "jones"});
  auto doc = json_of(j);
  CHECK(doc["invariant"] == "jones");
  CHECK(doc["value"] == "-t^-4+t^-3+t^-1");

  CHECK(line(run({"knot", "--pd", data("hopf_negative.json"), "--invariant", "jones"})) == "-t^-5/2 - t^-1/2");
  CHECK(line(run({"knot", "--pd", data("unlink2.json"), "--invariant", "generic"})) == "(x + y)/z");
  CHECK(line(run({"knot", "--pd", data("trefoil_right.json"), "--invariant", "writhe"})) == "3");
  CHECK(line(run({"knot", "--pd", data("kprime.json"), "--invariant", "writhe"})) == "-1");
  CHECK(line(run({"knot", "--pd", data("trefoil.json"), "--at-level", "2"})) == "-1");

  auto lvl = json_of(run({"--format", "json", "knot", "--pd", data("trefoil.json"), "--at-level", "3"}));
  CHECK(std::stod(lvl["residuals"]["adopted"].get<std::string>()) < 1e-10);

  auto m = run({"knot", "--pd", data("kprime.json"), "--move", "R1-", "--crossing", "0"});
  CHECK(line(m) == R"({"components":1,"crossings":[],"free_loops":1})");
}

TEST_CASE("mechanics and quantization through the CLI") {
  CHECK(line(run({"poisson", "--f", "q", "--g", "p", "--n", "1"})) == "-1");
  CHECK(line(run({"poisson", "--f", "p", "--g", "q"})) == "1");
  CHECK(line(run({"poisson", "--f", "q", "--g", "q"})) == "0");
  CHECK(line(run({"quantize", "--f", "q", "--n", "1", "--psi", "p^2"})) == "2*i*hbar*p");

  auto res = json_of(run({"--format", "json", "quantize", "--f", "q^2", "--g", "q*p", "--psi", "q*p"}));
  CHECK(res["residual"] == "0");

  auto flow = run({"flow", "--H", "(q^2+p^2)/2", "--n", "1", "--x0", "1,0", "--T", "1.5707963267948966", "--h",
                   "1e-3"});
  CHECK(flow.code == 0);
  std::istringstream in(flow.out);
  std::string header, row, last;
  std::getline(in, header);
  CHECK(header == "t,q,p");
  std::size_t rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    last = row;
  }
  CHECK(rows == static_cast<std::size_t>(std::floor(1.5707963267948966 / 1e-3)) + 1);
  double t, q, p;
  char c1, c2;
  std::istringstream(last) >> t >> c1 >> q >> c2 >> p;
  CHECK(std::abs(q) < 1e-6);
  CHECK(std::abs(p + 1) < 1e-6);
}

TEST_CASE("linear algebra and Lie groups through the CLI") {
  auto sb = json_of(run({"--format", "json", "symplectic-basis", "--matrix", R"([["0","2"],["-2","0"]])"}));
  CHECK(sb["value"]["basis"] == nlohmann::json::parse(R"([["1","0"],["0","1/2"]])"));
  CHECK(sb["residuals"]["congruence"] == "0");
  CHECK(run({"symplectic-basis", "--matrix", R"([["0","1"],["1","0"]])"}).code == 1);

  auto e = json_of(run({"--format", "json", "lie", "exp", "--X", R"([["0","-1"],["1","0"]])"}));
  CHECK(e["command"] == "lie exp");
  CHECK(std::stod(e["residuals"]["det_exp_minus_exp_trace"].get<std::string>()) < 1e-12);
  CHECK(line(run({"lie", "ad", "--X", R"([["0","i"],["i","0"]])", "--Y", R"([["0","-1"],["1","0"]])"})) ==
        "[[2i, 0], [0, -2i]]");
  CHECK(line(run({"lie", "member", "--X", R"([["i","0"],["0","-i"]])", "--algebra", "su"})) == "true");
}

TEST_CASE("gauge and geodesics through the CLI") {
  const char* pure = R"({"chart": ["x","y"], "components": ["-y", "-x"]})";
  auto h = json_of(run({"--format", "json", "holonomy", "--A", pure, "--loop", kSquare, "--steps", "10000"}));
  CHECK(std::stod(h["residuals"]["deviation_from_identity"].get<std::string>()) < 1e-6);

  const char* a = R"({"chart": ["x","y"],
    "components": [[["0","0"],["0","0"]], [["4/5*i*x","0"],["0","-4/5*i*x"]]]})";
  auto w = run({"wilson", "--A", a, "--loop", kSquare, "--steps", "1000"});
  CHECK(w.code == 0);
  CHECK(std::abs(std::stod(line(w)) - 2 * std::cosh(0.8)) < 1e-9);

  const char* sphere = R"({"chart": ["theta","phi"], "g": [["1","0"],["0","sin(theta)^2"]]})";
  auto g = json_of(run({"--format", "json", "geodesic", "--metric", sphere, "--x0", "pi/2,0", "--v0", "0,1",
                        "--T", "6.283185307179586", "--h", "1e-3"}));
  CHECK(std::abs(std::stod(g["value"]["x"][0].get<std::string>()) - M_PI / 2) < 1e-6);
  CHECK(std::stod(g["residuals"]["speed_drift"].get<std::string>()) < 1e-7);

  auto ch = run({"christoffel", "--metric", sphere});
  CHECK(ch.out.find("Gamma^theta_phi,phi = -cos(theta)*sin(theta)") != std::string::npos);
}

TEST_CASE("exit codes and determinism") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"poisson", "--f", "q"}).code == 2);
  CHECK(run({"--format", "xml", "poisson", "--f", "q", "--g", "p"}).code == 2);
  CHECK(run({"flow", "--H", "p", "--x0", "0,1", "--T", "1", "--h", "-1"}).code == 2);
  CHECK(run({"--help"}).code == 0);

  auto bad = run({"poisson", "--f", "q+", "--g", "p"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error:") == 0);
  CHECK(run({"poisson", "--f", "q", "--g", "x"}).code == 1);
  CHECK(run({"knot", "--pd", "/no/such/file.json"}).code == 1);
  CHECK(run({"knot", "--pd", R"({"crossings":[{"sign":1,"arcs":[1,2,1,2]}]})"}).code == 1);
  CHECK(run({"quantize", "--f", "q", "--psi", "sin("}).code == 1);

  std::vector<std::string> args{"--format", "json", "knot", "--pd", data("trefoil.json"), "--invariant", "homfly"};
  CHECK(run(args).out == run(args).out);
  std::vector<std::string> flow{"flow", "--H", "p^2/2 + q^4", "--x0", "1,0", "--T", "2", "--h", "0.01"};
  CHECK(run(flow).out == run(flow).out);
}
