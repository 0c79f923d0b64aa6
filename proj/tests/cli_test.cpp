#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sybil/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = sybil::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "sybilvote_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

nlohmann::json structured(const Result& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("decide on a binary file") {
  const auto path = write_file("binary.txt", "kind=binary sigma=0.2\np p p r\n");
  const Result r = run({"decide", path, "--rule", "supermajority", "--format", "structured"});
  CHECK(r.code == 0);
  const auto doc = structured(r);
  CHECK(doc["elected"] == nlohmann::json::array({"p"}));
  CHECK(doc["delta"] == "0.1");
  CHECK(doc["trace"][0]["support"] == 3);
  const Result tighter = run({"decide", path, "--rule", "supermajority", "--delta", "1/4", "--format", "structured"});
  CHECK(structured(tighter)["elected"] == nlohmann::json::array({"r"}));
}

TEST_CASE("decide on ordinal and parameter files") {
  const auto ordinal = write_file("ordinal.txt", "kind=ordinal reality=r alts=r,a,b\na,r,b\na,r,b\na,r,b\n");
  const Result agenda = run({"decide", ordinal, "--rule", "agenda", "--variant", "conservative", "--format",
                             "structured"});
  CHECK(agenda.code == 0);
  CHECK(structured(agenda)["elected"] == nlohmann::json::array({"a"}));

  const auto cycle = write_file("cycle.txt", "kind=ordinal reality=r alts=r,a,b,c\na,b,c,r\nb,c,a,r\nc,a,b,r\n");
  CHECK(structured(run({"decide", cycle, "--rule", "agenda", "--format", "structured"}))["elected"] ==
        nlohmann::json::array({"r"}));
  CHECK(structured(run({"decide", cycle, "--rule", "agenda", "--variant", "permissive", "--order", "c,b,a,r",
                        "--format", "structured"}))["elected"] == nlohmann::json::array({"r", "a", "b", "c"}));

  const auto parameter = write_file("parameter.txt", "kind=parameter r=1.5 sigma=0.1\n2.0\n0.5\n");
  const Result kept = run({"decide", parameter, "--rule", "suppress-outer", "--format", "structured"});
  CHECK(kept.code == 0);
  CHECK(structured(kept)["value"] == "1.5");
  CHECK(structured(kept)["branch"] == "keep");
}

TEST_CASE("decide usage errors") {
  const auto path = write_file("binary2.txt", "kind=binary\np\n");
  CHECK(run({"decide", path, "--rule", "agenda"}).code == 1);
  CHECK(run({"decide", path}).code == 1);
  CHECK(run({"decide", "/nonexistent/file", "--rule", "majority"}).code == 1);
  const auto bad = write_file("bad.txt", "kind=binary\np\nq\n");
  const Result r = run({"decide", bad, "--rule", "majority"});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("structured output is byte-identical across runs") {
  const auto cycle = write_file("cycle2.txt", "kind=ordinal reality=r alts=r,a,b,c\na,b,c,r\nb,c,a,r\nc,a,b,r\n");
  const std::vector<std::string> args{"decide", cycle, "--rule", "agenda", "--format", "structured"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> audit{"audit", "--kind", "ordinal", "--n", "4", "--rule", "supermajority-condorcet",
                                       "--scope", "reality-viable", "--base", "condorcet", "--format", "structured"};
  CHECK(run(audit).out == run(audit).out);
}

TEST_CASE("curve") {
  const Result r = run({"curve", "--sigma", "0,1/3,0.1,1", "--delta", "0,1/6,0.05"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "sigma,delta,rho,achievable");
  CHECK(r.out.find("\n0,0,0,true\n") != std::string::npos);
  CHECK(r.out.find("\n1/3,1/6,0.5,false\n") != std::string::npos);
  CHECK(r.out.find("\n0.1,0.05,1/9,true\n") != std::string::npos);
  CHECK(r.out.find("\n1,0,inf,false\n") != std::string::npos);
  CHECK(run({"curve", "--delta", "0.6"}).code == 1);
  CHECK(run({"curve", "--sigma", "1.5"}).code == 1);
}

TEST_CASE("curve at half sigma matches sigma over one minus sigma") {
  const Result r = run({"curve", "--sigma", "0,0.05,0.1,0.2,0.25,1/3,0.4,0.5,0.9", "--delta", "sigma/2",
                        "--format", "structured"});
  for (const auto& row : structured(r)) {
    const double sigma = [&] {
      const std::string s = row["sigma"];
      const auto slash = s.find('/');
      return slash == std::string::npos ? std::stod(s) : std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    }();
    const std::string rho = row["rho"];
    const auto slash = rho.find('/');
    const double value =
        slash == std::string::npos ? std::stod(rho) : std::stod(rho.substr(0, slash)) / std::stod(rho.substr(slash + 1));
    CHECK(value == doctest::Approx(sigma / (1 - sigma)));
  }
}

TEST_CASE("audit examples") {
  const Result safe = run({"audit", "--kind", "binary", "--n", "9", "--rule", "supermajority", "--base", "majority",
                           "--property", "safety"});
  CHECK(safe.code == 0);
  CHECK(safe.out.find("safety: holds") == 0);

  const Result broken = run({"audit", "--kind", "binary", "--n", "9", "--rule", "supermajority", "--base",
                             "majority", "--property", "safety", "--delta", "0.0", "--sigma", "0.2", "--format",
                             "structured"});
  CHECK(broken.code == 2);
  const auto doc = structured(broken);
  CHECK(doc["holds"] == false);
  CHECK(doc["witness"]["rule_output"] == nlohmann::json::array({"p"}));

  const Result blocked = run({"audit", "--property", "liveness", "--sigma", "0.4", "--rule", "supermajority"});
  CHECK(blocked.code == 2);
  CHECK(blocked.out.find("witness:") != std::string::npos);

  CHECK(run({"audit", "--property", "liveness", "--sigma", "0.25", "--rule", "supermajority"}).code == 0);
  CHECK(run({"audit", "--kind", "binary", "--n", "12", "--rule", "supermajority", "--base", "majority", "--budget",
             "1000"})
            .code == 3);
  CHECK(run({"audit", "--rule", "nonsense"}).code == 1);
  CHECK(run({"audit", "--rule", "supermajority", "--property", "safety"}).code == 1);
}

TEST_CASE("audit ordinal and parameter rules") {
  CHECK(run({"audit", "--kind", "ordinal", "--n", "4", "--rule", "agenda", "--base", "condorcet"}).code == 0);
  CHECK(run({"audit", "--kind", "ordinal", "--n", "4", "--rule", "supermajority-condorcet", "--scope",
             "reality-viable", "--base", "condorcet"})
            .code == 2);
  CHECK(run({"audit", "--kind", "parameter", "--n", "5", "--rule", "suppress-outer", "--base", "median-base",
             "--sigma", "0.25"})
            .code == 0);
  CHECK(run({"audit", "--kind", "parameter", "--n", "5", "--rule", "suppress-outer", "--base", "simple-update",
             "--property", "less-conservative", "--random", "500"})
            .code == 0);
  const Result reversed = run({"audit", "--kind", "parameter", "--n", "4", "--rule", "simple-update", "--base",
                               "suppress-outer", "--property", "less-conservative", "--format", "structured"});
  CHECK(reversed.code == 2);
  CHECK(structured(reversed)["witness"].contains("base_rule_output"));
  CHECK(run({"audit", "--kind", "parameter", "--n", "6", "--rule", "suppress-outer", "--property", "liveness",
             "--sigma", "0.4", "--liveness-search", "every-unanimous"})
            .code == 2);
}

TEST_CASE("estimate sigma") {
  const Result zero = run({"estimate-sigma", "--k", "100", "--s", "0", "--p", "0.05", "--format", "structured"});
  CHECK(zero.code == 0);
  const auto doc = structured(zero);
  CHECK(std::stod(doc["sigma_upper_bound"].get<std::string>()) == doctest::Approx(0.0295).epsilon(0.01));
  CHECK(std::stod(doc["recommended_delta"].get<std::string>()) == doctest::Approx(0.0148).epsilon(0.01));
  CHECK_FALSE(doc.contains("warning"));

  const Result all = run({"estimate-sigma", "--k", "10", "--s", "10", "--format", "structured"});
  CHECK(structured(all)["sigma_upper_bound"] == "1");
  CHECK(structured(all).contains("warning"));

  const Result margin = run({"estimate-sigma", "--k", "100", "--s", "10", "--epsilon", "0.02", "--format",
                             "structured"});
  CHECK(structured(margin)["sigma_point_plus_margin"] == "0.12");
  CHECK(structured(margin)["point_recommended_delta"] == "0.06");

  CHECK(run({"estimate-sigma", "--k", "10", "--s", "11"}).code == 1);
  CHECK(run({"estimate-sigma", "--k", "10", "--s", "1", "--p", "1.5"}).code == 1);
}
