#include <doctest.h>

#include "cli_support.hpp"

using hgtest::data_file;
using hgtest::run_cli;

TEST_CASE("solve: skew data") {
  const auto r = run_cli({"solve", "--data", data_file("skew.json"), "--trunc", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("m,point,value\n", 0) == 0);
  CHECK(r.out.find("3,y_3,1/125\n") != std::string::npos);
  CHECK(r.out.find("8,y_8,1/390625\n") != std::string::npos);
}

TEST_CASE("solve: float backend and json") {
  const auto r = run_cli({"solve", "--data", data_file("skew.json"), "--trunc", "2", "--backend", "float", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"backend\": \"float\"") != std::string::npos);
  CHECK(r.out.find("0.04") != std::string::npos);
}

TEST_CASE("energy") {
  auto r = run_cli({"energy", "--data", data_file("skew.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("total,3\n") != std::string::npos);
  r = run_cli({"energy", "--data", data_file("symmetric.json")});
  CHECK(r.out.find("total,1\n") != std::string::npos);
  r = run_cli({"energy", "--data", data_file("inverse_m.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("total,inf\n") != std::string::npos);
  CHECK(r.out.find("finite,false") != std::string::npos);
}

TEST_CASE("flux and apex") {
  auto r = run_cli({"flux", "--data", data_file("skew.json"), "--trunc", "2"});
  CHECK(r.out == "m,eta_closed,eta_via_solution\n1,-2,-2\n2,-2/3,-2/3\n");
  r = run_cli({"flux", "--data", data_file("symmetric.json"), "--format", "json"});
  CHECK(r.out.find("\"value\": \"-2\"") != std::string::npos);
  r = run_cli({"flux", "--data", data_file("inverse_m.json"), "--format", "json", "--backend", "float"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"exists\": false") != std::string::npos);
}

TEST_CASE("dtn apply and invert") {
  auto r = run_cli({"dtn", "apply", "--data", data_file("skew.json"), "--trunc", "2", "--format", "csv"});
  CHECK(r.out == "m,eta\n1,-2\n2,-2/3\n");
  const auto dir = hgtest::scratch_dir("cli_dtn");
  const auto f = hgtest::write_file(dir / "flux.json",
                                    R"({"a0": "1", "apex": "0", "eta": {"terms": [{"type": "geometric", "A2": "-6", "r": "1/3"}]}})");
  r = run_cli({"dtn", "invert", "--data", f, "--trunc", "6", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == "m,a\n1,0\n2,0\n3,0\n4,0\n5,0\n6,0\n");
  r = run_cli({"dtn", "rotate", "--data", f});
  CHECK(r.code == 2);
}

TEST_CASE("green and poisson") {
  auto r = run_cli({"green", "--x", "x:1", "--y", "x:1"});
  CHECK(r.out.find("\"value\": \"9/50\"") != std::string::npos);
  r = run_cli({"green", "--x", "x:2", "--y", "w:0121:0", "--mode", "closed", "--format", "csv"});
  CHECK(r.code == 0);
  r = run_cli({"green", "--x", "y:2", "--y", "x:1", "--mode", "closed"});
  CHECK(r.code == 2);
  r = run_cli({"green", "--x", "x:0", "--y", "x:1"});
  CHECK(r.code == 2);
  r = run_cli({"poisson", "--f", "const:1", "--level", "3", "--domain", "sg", "--out", "csv", "--oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("vertex,x,y,value,oracle\n", 0) == 0);
  CHECK(r.out.find(",1/15,1/15\n") != std::string::npos);
  r = run_cli({"poisson", "--f", "cell:01:2", "--level", "3", "--domain", "omega"});
  CHECK(r.code == 0);
  r = run_cli({"poisson", "--f", "gauss:1", "--level", "3"});
  CHECK(r.code == 2);
}

TEST_CASE("trace and extend") {
  auto r = run_cli({"trace", "--data", data_file("harmonic_trace.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"T_inf_closed\": \"1\"") != std::string::npos);
  r = run_cli({"extend", "--mode", "E", "--data", data_file("harmonic_trace.json"), "--trunc", "4", "--report", "json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"lap_sup\": \"0\"") != std::string::npos);
  CHECK(r.out.find("\"restriction_roundtrip\": true") != std::string::npos);
  r = run_cli({"extend", "--mode", "Eomega", "--data", data_file("skew.json"), "--trunc", "4"});
  CHECK(r.out.find("\"glued\": true") != std::string::npos);
  r = run_cli({"extend", "--mode", "even", "--data", data_file("skew.json"), "--trunc", "3", "--report", "csv"});
  CHECK(r.out.find("1:2,0,-4\n") != std::string::npos);
}

TEST_CASE("spectra") {
  auto r = run_cli({"spectra", "--level", "1", "--bc", "dirichlet"});
  CHECK(r.out == "k,eigenvalue\n1,2\n2,5\n3,5\n");
  r = run_cli({"spectra", "--level", "0", "--bc", "neumann"});
  CHECK(r.out.find("2,3\n3,3\n") != std::string::npos);
  r = run_cli({"spectra", "--level", "3", "--census"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",false") == std::string::npos);
  r = run_cli({"spectra", "--level", "1", "--backend", "rational"});
  CHECK(r.code == 2);
  CHECK(r.err.find("floating-point") != std::string::npos);
}

TEST_CASE("graph export") {
  auto r = run_cli({"graph", "--level", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("u,v\n", 0) == 0);
  size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 10);
  r = run_cli({"graph", "--level", "2", "--format", "json"});
  CHECK(r.out.find("\"side\": \"axis\"") != std::string::npos);
}

TEST_CASE("errors map to exit codes") {
  const auto dir = hgtest::scratch_dir("cli_errors");
  const auto bad = hgtest::write_file(dir / "bad.json", "{\"a0\": \"1\",\n \"terms\": [}\n");
  auto r = run_cli({"solve", "--data", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2, column") != std::string::npos);
  CHECK(r.out.empty());

  r = run_cli({"solve", "--data", (dir / "missing.json").string()});
  CHECK(r.code == 2);

  const auto div = hgtest::write_file(dir / "div.json", R"({"a0": 1, "terms": [{"type": "geometric", "A2": 1, "r": 2}]})");
  CHECK(run_cli({"solve", "--data", div}).code == 2);

  const auto fin = hgtest::write_file(dir / "fin.json", R"({"a0": 1, "terms": [{"type": "explicit", "values": [1, 2]}]})");
  CHECK(run_cli({"solve", "--data", fin}).code == 3);

  const auto typ = hgtest::write_file(dir / "typ.json", R"({"a0": [1], "terms": []})");
  CHECK(run_cli({"solve", "--data", typ}).code == 2);

  CHECK(run_cli({"graph", "--level", "99"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"solve", "--data", data_file("skew.json"), "--trunc", "0"}).code == 2);
  CHECK(run_cli({"solve", "--data", data_file("skew.json"), "--backend", "quad"}).code == 2);
}

TEST_CASE("explicit data with a tail") {
  const auto dir = hgtest::scratch_dir("cli_explicit");
  const auto f = hgtest::write_file(
      dir / "ex.json",
      R"({"a0": "0", "terms": [{"type": "explicit", "values": ["1/2", 0.25], "tail": {"type": "constant", "A": "0"}}]})");
  const auto r = run_cli({"solve", "--data", f, "--trunc", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1,x_1,1/2\n") != std::string::npos);
  CHECK(r.out.find("2,x_2,1/4\n") != std::string::npos);
  CHECK(r.out.find("3,x_3,0\n") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::vector<std::string>> cmds = {
      {"solve", "--data", data_file("symmetric.json"), "--trunc", "6", "--format", "json"},
      {"energy", "--data", data_file("inverse_m.json"), "--backend", "float"},
      {"flux", "--data", data_file("inverse_m.json"), "--backend", "float", "--format", "json"},
      {"spectra", "--level", "2", "--bc", "neumann", "--format", "json"},
      {"poisson", "--f", "const:1", "--level", "3", "--domain", "omega", "--backend", "float"},
      {"extend", "--mode", "Eomega", "--data", data_file("symmetric.json"), "--trunc", "4"},
      {"graph", "--level", "2", "--format", "json"},
  };
  for (const auto& c : cmds) {
    const auto a = run_cli(c), b = run_cli(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}
