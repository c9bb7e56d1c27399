/*
 * Copyright 2026 The elmatch Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using elmatch::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  f << body;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

bool has_line(const std::string& text, const std::string& key, const std::string& value) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key) continue;
    std::string rest;
    std::getline(ls, rest);
    const auto b = rest.find_first_not_of(' ');
    if (b != std::string::npos && rest.substr(b) == value) return true;
  }
  return false;
}

} // namespace

TEST_CASE("families") {
  const auto el = call({"families", "show", "el"});
  CHECK(el.code == 0);
  CHECK(has_line(el.out, "a3", "1/3*s"));
  CHECK(has_line(el.out, "b6", "1/18*s^2"));

  const auto geef = call({"families", "show", "geef:mu=1/8"});
  CHECK(has_line(geef.out, "b4", "1/8*k - 3/8*s^2 - 3/8"));

  const auto bogus = call({"families", "show", "bogus"});
  CHECK(bogus.code == 2);
  CHECK(bogus.err.find("position") != std::string::npos);

  const auto list = call({"families", "list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("fm-matching") != std::string::npos);
}

TEST_CASE("match check and derive") {
  const auto ok = call({"match", "check", "--family", "el", "--order", "one", "--prior-class",
                        "elaborate"});
  CHECK(ok.code == 0);
  CHECK(has_line(ok.out, "derived_lambda", "-2/3*k + 5/4*s^2 + 2"));

  const auto sch = call({"match", "check", "--family", "schennach", "--order", "one",
                         "--prior-class", "elaborate"});
  CHECK(sch.code == 3);
  CHECK(sch.out.find("fails b4 condition (elaborate class); residual: -1/8*k + 1/8*s^2 + 1/8") !=
        std::string::npos);

  const auto cr = call({"match", "check", "--family", "cressie-read:tau3=1/2,tau4=1/4",
                        "--order", "half"});
  CHECK(cr.code == 3);
  CHECK(cr.out.find("fails a3 condition; residual: 1/6*s") != std::string::npos);

  const auto fm = call({"match", "derive", "--family", "fm-matching", "--prior-class",
                        "elaborate"});
  CHECK(fm.code == 0);
  CHECK(has_line(fm.out, "margin", "o(n^-1)"));
  CHECK(has_line(fm.out, "lambda", "0"));

  const auto el = call({"match", "derive", "--family", "el", "--prior-class", "simple"});
  CHECK(el.code == 0);
  CHECK(has_line(el.out, "margin", "o(n^-1/2)"));
  CHECK(has_line(el.out, "prior", "simple:chi=-1/2*s"));

  CHECK(call({"match", "check", "--family", "el", "--order", "two"}).code == 2);
}

TEST_CASE("quantile on a data file, and JSON round trip through --config") {
  write("cli_sample.csv", "value\n0.0\n1.0\n-1.0\n2.0\n0.5\n");
  const auto q = call({"quantile", "--family", "geef:mu=0", "--prior", "eq29", "--alpha", "0.05",
                       "--order", "1", "--data", "cli_sample.csv", "--json", "cli_q.json",
                       "--full-precision"});
  REQUIRE(q.code == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_q.json"));
  CHECK(doc.at("config").at("family") == "geef:mu=0");
  const double theta1 = doc.at("result").at("theta1").get<double>();

  const auto again = call({"quantile", "--config", "cli_q.json", "--json", "cli_q2.json"});
  REQUIRE(again.code == 0);
  const auto doc2 = nlohmann::json::parse(slurp("cli_q2.json"));
  CHECK(doc2.at("result").at("theta1").get<double>() == theta1);
  CHECK(doc2.at("result") == doc.at("result"));

  // Flags override the file.
  const auto over = call({"quantile", "--config", "cli_q.json", "--alpha", "0.5", "--json",
                          "cli_q3.json"});
  REQUIRE(over.code == 0);
  CHECK(nlohmann::json::parse(slurp("cli_q3.json")).at("config").at("alpha") == 0.5);

  // The saved prior and family can be fed back as file: specs.
  const auto ff = call({"families", "show", "schennach", "--json", "cli_f.json"});
  REQUIRE(ff.code == 0);
  const auto back = call({"families", "show", "file:cli_f.json"});
  CHECK(has_line(back.out, "b4", "1/8*k - 3/8*s^2 - 3/8"));
  const auto pf = call({"quantile", "--data", "cli_sample.csv", "--prior", "file:cli_q.json",
                        "--family", "geef:mu=0", "--json", "cli_q4.json", "--full-precision"});
  REQUIRE(pf.code == 0);
  CHECK(nlohmann::json::parse(slurp("cli_q4.json")).at("result").at("theta1") == theta1);

  write("cli_short.csv", "1\n2\n3\n");
  CHECK(call({"quantile", "--data", "cli_short.csv"}).code == 2);
  CHECK(call({"quantile", "--data", "no_such_file.csv"}).code == 2);
  CHECK(call({"quantile", "--data", "cli_sample.csv", "--alpha", "1.5"}).code == 2);
  for (const char* f : {"cli_sample.csv", "cli_short.csv", "cli_q.json", "cli_q2.json",
                        "cli_q3.json", "cli_q4.json", "cli_f.json"}) {
    std::remove(f);
  }
}

TEST_CASE("coverage predict") {
  const auto p = call({"coverage", "predict", "--family", "el", "--prior", "eq29", "--dist", "exp",
                       "--n", "50", "--alpha", "0.05", "--order", "one"});
  CHECK(p.code == 0);
  CHECK(has_line(p.out, "predicted_coverage", "0.948304"));

  const auto m = call({"coverage", "predict", "--moments", "1,1,2,9", "--n", "50"});
  CHECK(m.code == 0);
  CHECK(has_line(m.out, "predicted_coverage", "0.948304"));

  CHECK(call({"coverage", "predict", "--prior", "eq34", "--dist", "exp"}).code == 2);
  CHECK(call({"coverage", "predict", "--n", "50"}).code == 2);
  CHECK(call({"coverage", "predict", "--moments", "0,1,0"}).code == 2);
  CHECK(call({"coverage", "predict", "--moments", "0,-1,0,3"}).code == 2);
  CHECK(call({"coverage", "predict", "--dist", "exp", "--moments", "0,1,0,3"}).code == 2);
}

TEST_CASE("coverage simulate: anchors, config file, determinism and CSV") {
  const std::vector<std::string> base{"coverage", "simulate", "--dist", "exp", "--n", "8",
                                      "--alpha", "0.05", "--reps", "10000", "--seed", "42",
                                      "--family", "geef:mu=1/8", "--prior", "eq29",
                                      "--order", "1"};
  auto args = base;
  args.insert(args.end(), {"--json", "cli_sim.json", "--csv", "cli_sim.csv"});
  const auto s = call(args);
  REQUIRE(s.code == 0);
  const auto doc = nlohmann::json::parse(slurp("cli_sim.json"));
  const double cov = doc.at("result").at("coverage").get<double>();
  CHECK(std::abs(cov - 0.850) <= 0.015);
  CHECK(doc.at("config").at("seed") == 42);
  CHECK(doc.at("result").at("generator").get<std::string>().find("splitmix64") == 0);
  const auto csv = slurp("cli_sim.csv");
  CHECK(csv.find("# seed = 42") != std::string::npos);
  CHECK(csv.find("hits,") != std::string::npos);

  const auto replay = call({"coverage", "simulate", "--config", "cli_sim.json", "--workers", "4",
                            "--json", "cli_sim2.json"});
  REQUIRE(replay.code == 0);
  CHECK(nlohmann::json::parse(slurp("cli_sim2.json")).at("result").at("hits") ==
        doc.at("result").at("hits"));

  write("cli.cfg", "# flat config\ndist = uniform\nn = 20\n--alpha = 0.1\nreps = 2000\n");
  const auto f = call({"coverage", "simulate", "--config", "cli.cfg", "--n", "12"});
  REQUIRE(f.code == 0);
  CHECK(f.out.find("# n = 12") != std::string::npos);
  CHECK(f.out.find("# dist = uniform") != std::string::npos);

  write("cli_bad.cfg", "nonsense = 1\n");
  CHECK(call({"coverage", "simulate", "--config", "cli_bad.cfg"}).code == 2);
  write("cli_bad2.cfg", "no equals sign\n");
  CHECK(call({"coverage", "simulate", "--config", "cli_bad2.cfg"}).code == 2);
  CHECK(call({"coverage", "simulate", "--n", "3"}).code == 2);
  CHECK(call({"coverage", "simulate", "--dist", "cauchy"}).code == 2);

  const auto out1 = call(base);
  const auto out2 = call(base);
  CHECK(out1.out == out2.out);
  for (const char* p : {"cli_sim.json", "cli_sim2.json", "cli_sim.csv", "cli.cfg", "cli_bad.cfg",
                        "cli_bad2.cfg"}) {
    std::remove(p);
  }
}

TEST_CASE("table2 and cumulants at reduced size") {
  const auto t = call({"table2", "--seed", "42", "--reps", "200", "--csv", "-"});
  REQUIRE(t.code == 0);
  CHECK(has_line(t.out, "cells", "80"));
  CHECK(t.out.find("dist,level,coverage_n8") != std::string::npos);

  const auto c = call({"cumulants", "validate", "--dist", "uniform", "--n", "20", "--reps",
                       "2000", "--seed", "1"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("k4") != std::string::npos);
  CHECK(call({"cumulants", "validate", "--n", "10"}).code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(call({}).code == 2);
  CHECK(call({"nope"}).code == 2);
  CHECK(call({"--help"}).code == 0);
  CHECK(call({"coverage", "simulate", "--help"}).code == 0);
}
