//
// gcat - exact computation with finite categories and group actions
//
// Runs the gcat binary on small bundles and checks exit codes, report
// contents and byte-identical reruns.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gcat/actions.hpp"
#include "gcat/fincat.hpp"
#include "gcat/io.hpp"
#include "gcat/monoid.hpp"

using namespace gcat;
namespace fs = std::filesystem;

namespace {

  struct Run {
    int         code = -1;
    std::string out;
  };

  Run gcat_run(std::string const& args) {
    std::string cmd = std::string(GCAT_BINARY) + " " + args + " 2>/dev/null";
    Run         r;
    FILE*       p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t            n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
      r.out.append(buf.data(), n);
    }
    int status = pclose(p);
    r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  fs::path workdir() {
    static fs::path dir = [] {
      fs::path d = fs::temp_directory_path() / ("gcat_cli_" + std::to_string(::getpid()));
      fs::create_directories(d);
      return d;
    }();
    return dir;
  }

  std::string write(std::string const& name, Json const& j) {
    fs::path p = workdir() / name;
    std::ofstream(p) << j.dump(1);
    return p.string();
  }

  std::string arrow_bundle() {
    auto one = terminal_category();
    auto a   = ordinal(1);
    Json doc;
    doc["categories"]["one"] = to_json(*one);
    doc["categories"]["I"]   = to_json(*a);
    doc["functors"]["i"] = to_json(make_functor(one, a, {0}, {a->identity(0)}));
    doc["functors"]["c"] = to_json(make_functor(one, a, {1}, {a->identity(1)}));
    for (auto const* f : {"i", "c"}) {
      doc["functors"][f]["source"] = "one";
      doc["functors"][f]["target"] = "I";
    }
    return write("arrow.json", doc);
  }

  std::string complex_bundle() {
    return write("bd.json", Json::parse(R"({"complexes": {
        "bd": {"vertices": 3, "faces": [[0,1],[0,2],[1,2]]},
        "D2": {"vertices": 3, "faces": [[0,1,2]]}}})"));
  }

  std::string swap_bundle() {
    auto z2 = cyclic_group(2);
    auto e  = chaotic_category({"a", "b"});
    auto pt = terminal_category();
    Json doc;
    doc["categories"]["E"]  = to_json(*e);
    doc["categories"]["pt"] = to_json(*pt);
    doc["monoids"]["Z2"]    = "cyclic:2";
    doc["functors"]["f"]    = to_json(make_functor(e, pt, {0, 0}, {0, 0, 0, 0}));
    doc["functors"]["f"]["source"] = "E";
    doc["functors"]["f"]["target"] = "pt";
    doc["actions"]["sw"] = to_json(chaotic_action(z2, e, {{0, 1}, {1, 0}}));
    doc["actions"]["tr"] = to_json(trivial_action(z2, pt));
    doc["actions"]["sw"]["monoid"] = doc["actions"]["tr"]["monoid"] = "Z2";
    doc["actions"]["sw"]["category"] = "E";
    doc["actions"]["tr"]["category"] = "pt";
    return write("swap.json", doc);
  }

}  // namespace

TEST_CASE("pushout with cross-check", "[cli]") {
  auto in = arrow_bundle();
  auto r  = gcat_run("pushout " + in + " --functor i --leg c --cross-check");
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  REQUIRE(j["status"] == "ok");
  REQUIRE(j["command"] == "pushout");
  REQUIRE(j["version"] == library_version());
  REQUIRE(j["inputs"]["file_hash"] == content_hash(read_json_file(in)));
  REQUIRE(j["result"]["counts"]["objects"] == 3);
  REQUIRE(j["result"]["counts"]["morphisms"] == 6);
  REQUIRE(j["result"]["cross_check"]["verdict"] == "agree");

  auto again = gcat_run("pushout " + in + " --functor i --leg c --cross-check");
  REQUIRE(again.out == r.out);

  // c is not a sieve, so there is no witness for it
  auto bad = gcat_run("check-dwyer " + in + " --functor c");
  REQUIRE(bad.code == 1);
  auto good = gcat_run("check-dwyer " + in + " --functor i");
  REQUIRE(good.code == 0);
}

TEST_CASE("homology and weak equivalences of complexes", "[cli]") {
  auto in = complex_bundle();
  auto h  = gcat_run("homology " + in + " --complex bd");
  REQUIRE(h.code == 0);
  auto j = Json::parse(h.out);
  REQUIRE(j["result"]["homology"] == Json::parse(R"(["Z", "Z", "0"])"));

  auto w = gcat_run("weq " + in + " --complex bd --complex2 D2");
  REQUIRE(w.code == 1);
  auto jw = Json::parse(w.out);
  REQUIRE(jw["status"] == "violated");
  REQUIRE(jw["violation"].get<std::string>().find("H_1") != std::string::npos);

  auto t = gcat_run("homology " + in + " --complex bd --format text");
  REQUIRE(t.code == 0);
  REQUIRE(t.out.find("status") != std::string::npos);
  REQUIRE_THROWS(Json::parse(t.out));
}

TEST_CASE("equivariant checks", "[cli]") {
  auto in = swap_bundle();
  REQUIRE(gcat_run("validate " + in).code == 0);

  auto fx = gcat_run("fixed " + in + " --action sw");
  REQUIRE(fx.code == 0);

  auto fam = write("family.json", Json::parse(R"([["0"], ["0", "1"]])"));
  auto w   = gcat_run("weq " + in + " --functor f --action sw --action-b tr --family " + fam);
  REQUIRE(w.code == 1);
  REQUIRE(Json::parse(w.out).contains("family_hash"));
  auto under = gcat_run("weq " + in + " --functor f --action sw --action-b tr --subgroup 0");
  REQUIRE(under.code == 0);

  auto pairs = write("pairs.json", Json::parse(R"([{"group": "cyclic:2", "phi": {"0": "0", "1": "1"}}])"));
  auto g     = gcat_run("gglobal-weq " + in + " --functor f --action sw --action-b tr --pairs " + pairs);
  REQUIRE(g.code == 0);
  REQUIRE(Json::parse(g.out)["pairs_hash"] == content_hash(read_json_file(pairs)));
}

TEST_CASE("generators, saturation and transfer", "[cli]") {
  auto g = gcat_run("gens --model g_global_thin --group cyclic:2 --hgroup cyclic:2 --phi 0:0,1:1 --n-max 1");
  REQUIRE(g.code == 0);
  // over all pairs the trivial homomorphism on Z/2 has no fixed objects
  auto all = gcat_run("saturate --cell 'cyclic:2;0,1;0:0,1:1;cyclic:2'");
  REQUIRE(all.code == 1);
  REQUIRE(Json::parse(all.out)["violation"].get<std::string>().find("phi=0->0,1->0") !=
          std::string::npos);
  auto sp = write("spairs.json", Json::parse(R"([{"subgroup": ["0", "1"], "phi": {"0": "0", "1": "1"}},
                                                 {"subgroup": ["0"], "phi": {"0": "0"}}])"));
  auto s  = gcat_run("saturate --cell 'cyclic:2;0,1;0:0,1:1;cyclic:2' --pairs " + sp);
  REQUIRE(s.code == 0);
  REQUIRE(Json::parse(s.out)["result"]["table"]["rows"].size() == 2);
  auto t = gcat_run("transfer-check --model g_global_thin --group cyclic:2 --hgroup cyclic:2 "
                    "--phi 0:0,1:1 --n-max 1 --u fun:cyclic:2");
  REQUIRE(t.code == 0);
}

TEST_CASE("corpus reports are reproducible", "[cli]") {
  auto a = gcat_run("corpus --kind posets --count 3 --seed 5");
  auto b = gcat_run("corpus --kind posets --count 3 --seed 5");
  auto c = gcat_run("corpus --kind posets --count 3 --seed 6");
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE(a.out != c.out);
  REQUIRE(Json::parse(a.out)["seed"] == 5);
}

TEST_CASE("exit codes", "[cli]") {
  REQUIRE(gcat_run("corpus --kind posets --count 3").code == 64);
  REQUIRE(gcat_run("").code == 64);
  REQUIRE(gcat_run("homology").code == 64);
  REQUIRE(gcat_run("homology --cap 0 x.json").code == 64);
  REQUIRE(gcat_run("homology /nonexistent/gcat.json").code == 74);
  auto junk = workdir() / "junk.json";
  std::ofstream(junk) << "{ not json";
  REQUIRE(gcat_run("validate " + junk.string()).code == 1);
  // [2] needs a composite of two generators, so the oracle cannot close
  auto in = arrow_bundle();
  auto r  = gcat_run("pushout " + in + " --functor i --leg c --cross-check --word-cap 1");
  REQUIRE(r.code == 2);
  auto j = Json::parse(r.out);
  REQUIRE(j["status"] == "inconclusive");
  REQUIRE(j["word_cap"] == 1);
}
