#include <cstdio>
#include <fstream>
#include <sstream>

#include "ambra/cli.hpp"
#include "ambra/json_io.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace ambra;
using namespace ambra::testutil;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path("/tmp/ambra_test_" + name) {
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

const char* kFibQ = R"({
  "field": {"type": "rational"},
  "alphabet": ["a"],
  "dim": 2,
  "initial": [["1"], ["0"]],
  "final": [["0"], ["1"]],
  "transitions": {"a": [[["0"], ["1"]], [["1"], ["1"]]]}
})";

const char* kFibSqrt5 = R"({
  "field": {"type": "number_field", "min_poly": ["-5", "0", "1"]},
  "alphabet": ["a"],
  "dim": 2,
  "initial": [["1", "0"], ["0", "0"]],
  "final": [["0", "0"], ["1", "0"]],
  "transitions": {"a": [[["0", "0"], ["1", "0"]], [["1", "0"], ["1", "0"]]]}
})";

const char* kDiagGroup = R"({
  "field": {"type": "rational"},
  "dim": 2,
  "generators": [[[["2"], ["0"]], [["0"], ["3"]]]]
})";

const char* kFibGroup = R"({
  "field": {"type": "rational"},
  "dim": 2,
  "generators": [[[["0"], ["1"]], [["1"], ["1"]]]]
})";

}  // namespace

TEST_CASE("cli: classify the Fibonacci automaton over Q and over Q(sqrt5)") {
  TempFile fq("fib_q.json", kFibQ);
  std::string out;
  CHECK(run({"classify", fq.path}, &out) == 0);
  CHECK(out.find("ExponentialOnly") != std::string::npos);
  CHECK(out.find("NotPowerSplitting") != std::string::npos);

  TempFile fl("fib_l.json", kFibSqrt5);
  std::string out2;
  CHECK(run({"--json", "classify", fl.path}, &out2) == 0);
  Json j = Json::parse(out2);
  CHECK(j.at("class") == "FinitelyAmbiguousEquivalent");
  CHECK(j.at("finite").at("minimal_M") == 2);
}

TEST_CASE("cli: synthesize targets and exit codes") {
  TempFile fq("fib_q2.json", kFibQ);
  std::string out, err;
  CHECK(run({"synthesize", fq.path, "--target", "monomial"}, &out, &err) == 2);
  CHECK(err.find("TargetUnreachable") != std::string::npos);

  TempFile fl("fib_l2.json", kFibSqrt5);
  std::string out2;
  CHECK(run({"synthesize", fl.path, "--target", "monomial"}, &out2) == 0);
  LinRep synth = linrep_from_json(Json::parse(out2));
  CHECK(synth.dim == 2);

  std::string outfile = "/tmp/ambra_test_synth_out.json";
  std::string out3;
  CHECK(run({"synthesize", fl.path, "--target", "monomial", "-o", outfile}, &out3) == 0);
  CHECK(out3.find("wrote") != std::string::npos);
  std::ifstream check(outfile);
  CHECK(check.good());
  std::remove(outfile.c_str());
}

TEST_CASE("cli: group analyze certificate and witness") {
  TempFile gd("diag_group.json", kDiagGroup);
  std::string out;
  CHECK(run({"--json", "group", "analyze", gd.path}, &out) == 0);
  Json j = Json::parse(out);
  CHECK(j.at("kind") == "certificate");
  CHECK(j.at("diagonal_index") == 1);

  TempFile gf("fib_group.json", kFibGroup);
  std::string out2;
  CHECK(run({"--json", "group", "analyze", gf.path}, &out2) == 0);
  Json j2 = Json::parse(out2);
  CHECK(j2.at("kind") == "refutation");
  CHECK(j2.at("refutation_kind") == "NotPowerSplitting");
  CHECK(j2.at("word") == "g1");

  std::string out3;
  CHECK(run({"--json", "group", "spectrum", gf.path}, &out3) == 0);
  CHECK(Json::parse(out3).at("kind") == "spectrum_refutation");
}

TEST_CASE("cli: eval, equiv, minimize, ambiguity") {
  TempFile fq("fib_q3.json", kFibQ);
  std::string out;
  CHECK(run({"--json", "eval", fq.path, "--word", "aaaaa"}, &out) == 0);
  CHECK(Json::parse(out).at("value") == Json::array({"5"}));

  std::string out2;
  CHECK(run({"--json", "equiv", fq.path, fq.path}, &out2) == 0);
  CHECK(Json::parse(out2).at("equivalent") == true);

  std::string out3;
  CHECK(run({"--json", "minimize", fq.path}, &out3) == 0);
  CHECK(Json::parse(out3).at("dim") == 2);

  std::string out4;
  CHECK(run({"--json", "ambiguity", fq.path}, &out4) == 0);
  Json amb = Json::parse(out4);
  CHECK(amb.at("class") == "ExponentiallyAmbiguous");
  CHECK(amb.at("eda") == true);
}

TEST_CASE("cli: lrs reports the improvement field plus spectral data") {
  TempFile fq("fib_q4.json", kFibQ);
  std::string out;
  CHECK(run({"--json", "lrs", fq.path}, &out) == 0);
  Json j = Json::parse(out);
  CHECK(j.at("class") == "ExponentialOnly");
  CHECK(j.at("improvement_field_min_poly").size() == 3);
  CHECK(j.at("spectrum_report").at("splitting_field").at("type") == "number_field");
  CHECK(j.at("spectrum_report").at("diagonalizable") == true);
  CHECK(j.at("steady_analysis").at("power_splitting_exponent").is_null());
  CHECK(j.at("steady_analysis").at("is_steady") == false);
}

TEST_CASE("cli: block-monomial synthesis of the Jordan automaton") {
  TempFile jd("jordan.json", R"({
    "field": {"type": "rational"},
    "alphabet": ["a"], "dim": 2,
    "initial": [["1"], ["0"]], "final": [["0"], ["1"]],
    "transitions": {"a": [[["1"], ["1"]], [["0"], ["1"]]]}
  })");
  std::string out, err;
  CHECK(run({"synthesize", jd.path, "--target", "block-monomial"}, &out) == 0);
  LinRep synth = linrep_from_json(Json::parse(out));
  CHECK(synth.dim == 2);
  // The monomial target is unreachable for this series.
  CHECK(run({"synthesize", jd.path, "--target", "monomial"}, &out, &err) == 2);
}

TEST_CASE("cli: rotation group certifies with index 2") {
  TempFile rot("rot_group.json", R"({
    "field": {"type": "rational"},
    "dim": 2,
    "generators": [[[["0"], ["-1"]], [["1"], ["0"]]]]
  })");
  std::string out;
  CHECK(run({"--json", "group", "analyze", rot.path}, &out) == 0);
  Json j = Json::parse(out);
  CHECK(j.at("kind") == "certificate");
  CHECK(j.at("diagonal_index") == 2);
  std::string out2;
  CHECK(run({"--json", "group", "spectrum", rot.path}, &out2) == 0);
  CHECK(Json::parse(out2).at("kind") == "spectrum_certificate");
}

TEST_CASE("cli: parse errors exit with code 1") {
  TempFile bad("bad.json", "{not json");
  std::string err;
  CHECK(run({"classify", bad.path}, nullptr, &err) == 1);
  CHECK(!err.empty());
  CHECK(run({"classify", "/nonexistent/file.json"}, nullptr, &err) == 1);
  TempFile reducible("red.json", R"({
    "field": {"type": "number_field", "min_poly": ["-1", "0", "1"]},
    "alphabet": ["a"], "dim": 1, "initial": [["1","0"]], "final": [["1","0"]],
    "transitions": {"a": [[["1","0"]]]}
  })");
  CHECK(run({"classify", reducible.path}, nullptr, &err) == 1);
}

TEST_CASE("cli: out-of-scope minimal representation exits with code 2") {
  TempFile noninv("noninv.json", R"({
    "field": {"type": "rational"},
    "alphabet": ["a"], "dim": 1, "initial": [["1"]], "final": [["1"]],
    "transitions": {"a": [[["0"]]]}
  })");
  std::string err;
  CHECK(run({"classify", noninv.path}, nullptr, &err) == 2);
  CHECK(err.find("OutOfScope") != std::string::npos);
}

TEST_CASE("cli: reports are byte-deterministic") {
  TempFile fl("fib_l3.json", kFibSqrt5);
  std::string a, b;
  CHECK(run({"--json", "classify", fl.path}, &a) == 0);
  CHECK(run({"--json", "classify", fl.path}, &b) == 0);
  CHECK(a == b);
}

TEST_CASE("json round trips") {
  // Automaton.
  LinRep rep = linrep_from_json(Json::parse(kFibSqrt5));
  CHECK(linrep_to_json(linrep_from_json(linrep_to_json(rep))) == linrep_to_json(rep));
  // Group.
  GroupInput g = group_from_json(Json::parse(kDiagGroup));
  CHECK(group_to_json(group_from_json(group_to_json(g))) == group_to_json(g));
  // Certificate.
  auto res = decide_virtually_diagonalizable(g);
  const auto& cert = std::get<EpimonomialCertificate>(res);
  Json cj = certificate_to_json(cert);
  CHECK(certificate_to_json(certificate_from_json(cj, g.field)) == cj);
  // Refutation with pair detail.
  GroupInput pair{Q(), 2,
                  {qmat_frac({{rat(2), rat(0)}, {rat(0), rat(1, 2)}}),
                   qmat_frac({{rat(2), rat(-3, 2)}, {rat(0), rat(1, 2)}})}};
  auto res2 = decide_virtually_diagonalizable(pair);
  const auto& wit = std::get<RefutationWitness>(res2);
  Json wj = refutation_to_json(wit);
  CHECK(refutation_to_json(refutation_from_json(wj, Q())) == wj);
  // Full classification report.
  SeriesClassification c = classify_series(rep);
  Json clj = classification_to_json(c);
  CHECK(classification_to_json(classification_from_json(clj)) == clj);
  // Spectrum certificate (rotation: extension field data included).
  GroupInput rot{Q(), 2, {rotation90()}};
  auto spec = decide_fg_spectrum(rot);
  Json sj = spectrum_certificate_to_json(std::get<SpectrumCertificate>(spec));
  CHECK(spectrum_certificate_to_json(spectrum_certificate_from_json(sj, Q())) == sj);
}
