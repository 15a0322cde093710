//
// gcat - exact computation with finite categories and group actions
//

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "gcat/actions.hpp"
#include "gcat/corpus.hpp"
#include "gcat/fincat.hpp"
#include "gcat/io.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"

using namespace gcat;

TEST_CASE("sha256 test vectors", "[io]") {
  REQUIRE(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  REQUIRE(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("canonical form", "[io]") {
  Json a = Json::parse(R"({"b": 1, "a": {"d": [1, 2], "c": null}})");
  Json b = Json::parse(R"({"a": {"c": null, "d": [1, 2]}, "b": 1})");
  REQUIRE(canonical_dump(a) == canonical_dump(b));
  REQUIRE(canonical_dump(a) == R"({"a":{"c":null,"d":[1,2]},"b":1})");
  REQUIRE(content_hash(a) == content_hash(b));
  REQUIRE(content_hash(a).rfind("sha256:", 0) == 0);
}

TEST_CASE("categories round trip", "[io][property]") {
  Rng rng(3);
  std::vector<CatPtr> cats = {terminal_category(), ordinal(3), delooping(*symmetric_group(3)),
                              chaotic_category({"a", "b", "c"}),
                              product_category(ordinal(1), delooping(*cyclic_group(2)))};
  for (int k = 0; k < 10; ++k) {
    cats.push_back(random_poset(rng, 1 + static_cast<int>(rng() % 6), 0.4));
  }
  for (auto const& c : cats) {
    Json j    = to_json(*c);
    auto back = category_from_json(j);
    REQUIRE(to_json(*back) == j);
    REQUIRE(content_hash(to_json(*back)) == content_hash(j));
    REQUIRE(find_isomorphism(c, back).has_value());

    // list order in a document does not matter
    Json shuffled = j;
    for (auto const* key : {"objects", "morphisms", "compose", "identity"}) {
      if (shuffled.contains(key) && shuffled[key].is_array()) {
        auto& arr = shuffled[key];
        std::vector<Json> items(arr.begin(), arr.end());
        std::shuffle(items.begin(), items.end(), rng);
        arr = Json(items);
      }
    }
    REQUIRE(content_hash(to_json(*category_from_json(shuffled))) == content_hash(j));
  }
}

TEST_CASE("bad category documents", "[io]") {
  Json j = to_json(*ordinal(1));
  j["compose"].clear();
  j["compose"].push_back({"x", "y", "z"});
  REQUIRE_THROWS_AS(category_from_json(j), Error);
  REQUIRE_THROWS_AS(category_from_json(Json::parse(R"({"objects": 3})")), Error);
}

TEST_CASE("monoids round trip", "[io]") {
  for (auto const& m : {trivial_group(), cyclic_group(4), symmetric_group(3)}) {
    Json j    = to_json(*m);
    auto back = monoid_from_json(j);
    REQUIRE(back->size() == m->size());
    REQUIRE(to_json(*back) == j);
    REQUIRE(back->is_group());
  }
  REQUIRE(named_monoid("trivial")->size() == 1);
  REQUIRE(named_monoid("cyclic:3")->size() == 3);
  REQUIRE(named_monoid("symmetric:3")->size() == 6);
  REQUIRE(named_monoid("bogus") == nullptr);
}

TEST_CASE("complexes", "[io]") {
  auto k = complex_from_json(Json::parse(R"({"vertices": 3, "faces": [[0,1],[1,2],[0,2]]})"));
  REQUIRE(k.num_vertices == 3);
  REQUIRE(k.faces.size() == 6);
  auto named = complex_from_json(Json::parse(R"({"vertices": ["a","b"], "faces": [[0,1]]})"));
  REQUIRE(named.num_vertices == 2);
  REQUIRE(named.vertex_names == std::vector<std::string>{"a", "b"});
  auto again = complex_from_json(to_json(k));
  REQUIRE(again.faces == k.faces);
}

TEST_CASE("bundles", "[io]") {
  auto z2 = cyclic_group(2);
  auto e  = chaotic_category({"a", "b"});
  auto sw = chaotic_action(z2, e, {{0, 1}, {1, 0}});
  auto pt = terminal_category();
  auto f  = make_functor(e, pt, {0, 0}, {0, 0, 0, 0});
  Json doc;
  doc["categories"]["E"]  = to_json(*e);
  doc["categories"]["pt"] = to_json(*pt);
  doc["monoids"]["Z2"]    = "cyclic:2";
  doc["functors"]["f"]    = to_json(f);
  doc["actions"]["sw"]    = to_json(sw);
  doc["actions"]["sw"]["monoid"]   = "Z2";
  doc["actions"]["sw"]["category"] = "E";

  auto b = read_bundle(doc);
  REQUIRE(b.category("E")->num_objects() == 2);
  REQUIRE(b.category(content_hash(to_json(*e)))->num_morphisms() == 4);
  REQUIRE(b.has_functor("f"));
  REQUIRE(b.functor("f").target->num_objects() == 1);
  REQUIRE(b.has_action("sw"));
  auto back = b.action("sw");
  REQUIRE(fixed_category(back, {0, 1}).category->num_objects() == 0);
  REQUIRE(b.hashes()["categories"]["E"] == content_hash(to_json(*e)));

  auto pairs = pairs_from_json(Json::parse(R"([{"group": "cyclic:2", "phi": {"0": "0", "1": "1"}},
                                                {"group": "trivial", "phi": {"0": "0"}}])"),
                               b, *z2);
  REQUIRE(pairs.size() == 2);
  REQUIRE(pairs[0].phi == std::vector<int>{0, 1});

  auto fam = family_from_json(Json::parse(R"([["0"], ["0", "1"]])"), *z2);
  REQUIRE(fam == std::vector<Subgroup>{{0}, {0, 1}});
  REQUIRE_THROWS(family_from_json(Json::parse(R"([["1"]])"), *z2));
}

TEST_CASE("missing files", "[io]") {
  REQUIRE_THROWS_AS(read_json_file("/nonexistent/gcat/input.json"), IoError);
}

TEST_CASE("subgroup pairs", "[io]") {
  auto z2 = cyclic_group(2);
  auto sp = subgroup_pairs_from_json(
      Json::parse(R"([{"subgroup": ["1", "0"], "phi": {"0": "0", "1": "1"}},
                      {"subgroup": ["0"], "phi": {"0": "0"}}])"),
      *z2, *z2);
  REQUIRE(sp.size() == 2);
  REQUIRE(sp[0].h == Subgroup{0, 1});
  REQUIRE(sp[0].phi == std::vector<int>{0, 1});
  REQUIRE(sp[1].phi == std::vector<int>{0});
  REQUIRE_THROWS(subgroup_pairs_from_json(
      Json::parse(R"([{"subgroup": ["0"], "phi": {"0": "1"}}])"), *z2, *z2));
  REQUIRE_THROWS(subgroup_pairs_from_json(
      Json::parse(R"([{"subgroup": ["0"], "phi": {"1": "0"}}])"), *z2, *z2));
}
