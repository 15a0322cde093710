//
// gcat - exact computation with finite categories and group actions
//
// Command line front end. Every subcommand reads a JSON bundle (see
// README), runs one operation, and prints a canonical report that embeds
// the content hashes of its inputs and the library version.
//
// Exit codes: 0 all properties hold, 1 a property is violated, 2
// inconclusive (a size cap or word cap was hit), 64 usage, 74 IO.

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "gcat/actions.hpp"
#include "gcat/corpus.hpp"
#include "gcat/dwyer.hpp"
#include "gcat/fincat.hpp"
#include "gcat/homology.hpp"
#include "gcat/io.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"
#include "gcat/weq.hpp"

using namespace gcat;

namespace {

  constexpr int kOk           = 0;
  constexpr int kViolated     = 1;
  constexpr int kInconclusive = 2;
  constexpr int kUsage        = 64;
  constexpr int kIo           = 74;

  struct Options {
    std::string input;
    std::string output;
    int         cap      = 3;
    int         word_cap = 16;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    std::string pairs_file;
    std::string family_file;

    std::string category;
    std::string complex;
    std::string complex2;
    std::string functor;
    std::string leg;
    std::string action;
    std::string action_b;
    std::string action_c;
    bool        cross_check = false;

    // generators and transfer
    std::string model = "thomason";
    std::string g, h, sub, phi, u = "identity";
    int         n_min = 0, n_max = 1;
    bool        acyclic = false;

    // saturation
    std::string cell;
    std::string hprime;

    // corpus
    std::string kind  = "spans";
    int         count = 10;
  };

  struct Report {
    Json        result = Json::object();
    int         status = kOk;
    std::string violation;
  };

  class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  std::vector<std::string> split(std::string const& s, char sep) {
    std::vector<std::string> out;
    std::string              cur;
    std::stringstream        ss(s);
    while (std::getline(ss, cur, sep)) {
      if (!cur.empty()) {
        out.push_back(cur);
      }
    }
    return out;
  }

  Limits limits_for(Options const&) {
    Limits l;
    l.max_objects   = 4096;
    l.max_morphisms = 1 << 20;
    return l;
  }

  Bundle load(Options const& o) {
    if (o.input.empty()) {
      throw UsageError("an input file is required");
    }
    return read_bundle(read_json_file(o.input), limits_for(o));
  }

  // The named entry, or the only one when no name is given.
  template <typename Map>
  std::string pick(Map const& m, std::string const& name, char const* what) {
    if (!name.empty()) {
      return name;
    }
    if (m.size() == 1) {
      return m.begin()->first;
    }
    throw UsageError(std::string("name the ") + what + " to use");
  }

  std::string pick_doc(Json const& doc, char const* section, std::string const& name,
                       char const* what) {
    if (!name.empty()) {
      return name;
    }
    if (doc.contains(section) && doc[section].size() == 1) {
      return doc[section].begin().key();
    }
    throw UsageError(std::string("name the ") + what + " to use");
  }

  Json counts(FinCat const& c) {
    return {{"objects", c.num_objects()}, {"morphisms", c.num_morphisms()}};
  }

  Json sset_counts(FinSSet const& x) {
    Json nd = Json::array(), all = Json::array();
    for (int n = 0; n <= x.cap(); ++n) {
      nd.push_back(x.count(n));
      all.push_back(x.total_count(n));
    }
    return {{"cap", x.cap()}, {"nondegenerate", nd}, {"all", all}};
  }

  // The simplicial set named by --category (its nerve) or --complex.
  SSetPtr input_sset(Bundle const& b, Options const& o, std::string& name) {
    if (!o.complex.empty() || (o.category.empty() && !b.complexes.empty() && b.categories.empty())) {
      name = pick(b.complexes, o.complex, "complex");
      return complex_sset(b.complexes.at(name), o.cap);
    }
    name = pick(b.categories, o.category, "category");
    return nerve(b.category(name), o.cap, limits_for(o));
  }

  Subgroup parse_subgroup(FinMonoid const& g, std::string const& names) {
    Subgroup s;
    for (auto const& n : split(names, ',')) {
      auto k = g.find(n);
      if (!k) {
        throw UsageError("unknown element '" + n + "'");
      }
      s.push_back(*k);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  std::vector<int> parse_phi(FinMonoid const& h, Subgroup const& sub, FinMonoid const& g,
                             std::string const& spec) {
    std::vector<int> phi(sub.size(), kNone);
    for (auto const& kv : split(spec, ',')) {
      auto arrow = kv.find(':');
      if (arrow == std::string::npos) {
        throw UsageError("phi is a list of h:g pairs");
      }
      auto x = h.find(kv.substr(0, arrow));
      auto y = g.find(kv.substr(arrow + 1));
      if (!x || !y) {
        throw UsageError("unknown element in phi '" + kv + "'");
      }
      auto it = std::find(sub.begin(), sub.end(), *x);
      if (it == sub.end()) {
        throw UsageError("phi is defined outside the subgroup");
      }
      phi[it - sub.begin()] = *y;
    }
    for (int v : phi) {
      if (v == kNone) {
        throw UsageError("phi must be given on every element of the subgroup");
      }
    }
    return phi;
  }

  MonoidPtr monoid_option(std::string const& ref, Bundle const* b) {
    if (b) {
      return b->monoid(ref);
    }
    if (auto m = named_monoid(ref)) {
      return m;
    }
    throw UsageError("unknown group '" + ref + "'");
  }

  void fail(Report& r, std::string what) {
    if (r.status == kOk) {
      r.status    = kViolated;
      r.violation = std::move(what);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  Report run_validate(Options const& o, Bundle const& b) {
    Report r;
    for (auto const& [name, c] : b.categories) {
      r.result["categories"][name] = counts(*c);
    }
    for (auto const& [name, m] : b.monoids) {
      r.result["monoids"][name] = {{"elements", m->size()}, {"group", m->is_group()}};
    }
    for (auto const& [name, k] : b.complexes) {
      r.result["complexes"][name] = {{"vertices", k.num_vertices}, {"faces", k.faces.size()}};
    }
    if (b.doc.contains("functors")) {
      for (auto const& [name, f] : b.doc["functors"].items()) {
        (void) f;
        Functor F = b.functor(name);
        r.result["functors"][name] = {{"injective_on_objects", is_injective_on_objects(F)},
                                      {"fully_faithful", is_fully_faithful(F)}};
      }
    }
    if (b.doc.contains("actions")) {
      for (auto const& [name, a] : b.doc["actions"].items()) {
        (void) a;
        CatAction A = b.action(name);
        r.result["actions"][name] = {{"elements", A.act.size()}};
      }
    }
    (void) o;
    return r;
  }

  Report run_nerve(Options const& o, Bundle const& b) {
    Report      r;
    std::string name;
    SSetPtr     x = input_sset(b, o, name);
    r.result["input"]  = name;
    r.result["counts"] = sset_counts(*x);
    if (o.format == "json") {
      r.result["simplicial_set"] = to_json(*x);
    }
    return r;
  }

  Report run_homology(Options const& o, Bundle const& b) {
    Report      r;
    std::string name;
    SSetPtr     x = input_sset(b, o, name);
    r.result["input"]    = name;
    r.result["cap"]      = o.cap;
    r.result["homology"] = to_json(homology(*x));
    return r;
  }

  Report run_sd(Options const& o, Bundle const& b) {
    Report         r;
    std::string    name = pick(b.complexes, o.complex, "complex");
    OrderedComplex k    = b.complexes.at(name);
    OrderedComplex sd   = sd_complex(k);
    r.result["input"]          = name;
    r.result["sd"]             = to_json(sd);
    r.result["face_poset"]     = counts(*face_poset(k));
    r.result["h_sd2"]          = counts(*h_sd2(k));
    auto hk = homology(*complex_sset(k, o.cap)), hs = homology(*complex_sset(sd, o.cap));
    r.result["homology"]       = to_json(hk);
    r.result["homology_sd"]    = to_json(hs);
    if (hk != hs) {
      fail(r, "homology of the subdivision differs");
    }
    return r;
  }

  Report run_ex(Options const& o, Bundle const& b) {
    Report      r;
    std::string name;
    SSetPtr     x  = input_sset(b, o, name);
    SSetPtr     ex_x = ex(x, o.cap, limits_for(o));
    auto        cert = homology_certificate(e_map(x, ex_x));
    r.result["input"]         = name;
    r.result["ex_counts"]     = sset_counts(*ex_x);
    r.result["e_certificate"] = to_json(cert);
    if (!cert.passed) {
      fail(r, "e : X -> Ex X is not a homology isomorphism: " + cert.detail);
    }
    return r;
  }

  std::optional<DwyerEquivariance> equivariance(Options const& o, Bundle const& b) {
    if (o.action.empty() && o.action_b.empty()) {
      return std::nullopt;
    }
    if (o.action.empty() || o.action_b.empty()) {
      throw UsageError("give both --action and --action-b");
    }
    return DwyerEquivariance{b.action(o.action), b.action(o.action_b)};
  }

  Report run_check_dwyer(Options const& o, Bundle const& b) {
    Report      r;
    std::string fname = pick_doc(b.doc, "functors", o.functor, "functor");
    Functor     i     = b.functor(fname);
    r.result["functor"] = fname;
    bool sieve = is_injective_on_objects(i) && is_fully_faithful(i) && is_sieve(i);
    r.result["sieve"] = sieve;
    if (!sieve) {
      fail(r, "not a sieve");
      return r;
    }
    auto lim = limits_for(o);
    auto w   = find_dwyer_witness(i, std::nullopt, lim);
    r.result["witness"] = w ? to_json(*w) : Json(nullptr);
    if (!w) {
      fail(r, "no Dwyer witness: some object of the largest admissible cosieve has no coreflection");
    }
    if (auto eq = equivariance(o, b)) {
      auto we = find_dwyer_witness(i, eq, lim);
      r.result["equivariant_witness"] = we ? to_json(*we) : Json(nullptr);
      if (!we) {
        fail(r, "no equivariant Dwyer witness");
      }
    }
    return r;
  }

  Report run_pushout(Options const& o, Bundle const& b) {
    Report  r;
    Functor i   = b.functor(o.functor.empty() ? "i" : o.functor);
    Functor c   = b.functor(o.leg.empty() ? "c" : o.leg);
    auto    lim = limits_for(o);
    auto    w   = find_dwyer_witness(i, std::nullopt, lim);
    if (!w) {
      fail(r, "the left leg is not a Dwyer map");
      return r;
    }
    auto p = dwyer_pushout(c, *w, lim);
    r.result["pushout"]      = to_json(*p.category);
    r.result["pushout_hash"] = content_hash(r.result["pushout"]);
    r.result["counts"]       = counts(*p.category);
    if (o.cross_check) {
      auto q = presented_pushout(i, c, o.word_cap, lim);
      if (auto const* inc = std::get_if<Inconclusive>(&q)) {
        r.result["cross_check"] = {{"verdict", "inconclusive"}, {"word", inc->word},
                                   {"reason", inc->reason}};
        r.status    = kInconclusive;
        r.violation = "oracle did not close within the word cap";
        return r;
      }
      auto const& pp  = std::get<PresentedPushout>(q);
      auto        iso = find_isomorphism(p.category, pp.category, lim);
      r.result["cross_check"] = {{"verdict", iso ? "agree" : "disagree"},
                                 {"oracle_counts", counts(*pp.category)}};
      if (!iso) {
        fail(r, "the Dwyer pushout and the presented pushout are not isomorphic");
      }
    }
    return r;
  }

  std::vector<Subgroup> family(Options const& o, FinMonoid const& g) {
    if (!o.family_file.empty()) {
      return family_from_json(read_json_file(o.family_file), g);
    }
    if (!o.sub.empty()) {
      return {parse_subgroup(g, o.sub)};
    }
    return all_subgroups(g);
  }

  std::vector<GroupPair> pairs(Options const& o, Bundle const* b, MonoidPtr const& g) {
    if (!o.pairs_file.empty()) {
      Bundle empty;
      return pairs_from_json(read_json_file(o.pairs_file), b ? *b : empty, *g);
    }
    return all_pairs(g, g);
  }

  Report run_fixed(Options const& o, Bundle const& b) {
    Report      r;
    std::string an = pick_doc(b.doc, "actions", o.action, "action");
    CatAction   a  = b.action(an);
    r.result["action"] = an;
    for (auto const& h : family(o, *a.monoid)) {
      auto f = fixed_category(a, h);
      r.result["fixed"][subgroup_label(*a.monoid, h)] = to_json(*f.category);
    }
    return r;
  }

  Report run_hofix(Options const& o, Bundle const& b) {
    Report      r;
    std::string an = pick_doc(b.doc, "actions", o.action, "action");
    CatAction   a  = b.action(an);
    r.result["action"] = an;
    for (auto const& p : pairs(o, &b, a.monoid)) {
      auto hf = homotopy_fixed_points(a, p.h, p.phi, limits_for(o));
      r.result["homotopy_fixed_points"][pair_label(p, *a.monoid)] = {
          {"counts", counts(*hf.fixed.category)},
          {"homology", to_json(homology(*nerve(hf.fixed.category, o.cap, limits_for(o))))}};
    }
    return r;
  }

  Report run_weq(Options const& o, Bundle const& b) {
    Report r;
    auto   lim = limits_for(o);
    if (!o.complex.empty() || !o.complex2.empty()) {
      if (o.complex.empty() || o.complex2.empty()) {
        throw UsageError("give --complex and --complex2 for an inclusion of complexes");
      }
      SSetPtr k    = complex_sset(b.complexes.at(o.complex), o.cap);
      SSetPtr l    = complex_sset(b.complexes.at(o.complex2), o.cap);
      auto    cert = homology_certificate(complex_inclusion(k, l));
      r.result["map"]         = o.complex + " -> " + o.complex2;
      r.result["certificate"] = to_json(cert);
      if (!cert.passed) {
        fail(r, "not a weak equivalence: " + cert.detail);
      }
      return r;
    }
    std::string fname = pick_doc(b.doc, "functors", o.functor, "functor");
    Functor     f     = b.functor(fname);
    std::optional<ActionPair> acts;
    if (!o.action.empty() && !o.action_b.empty()) {
      acts = ActionPair{b.action(o.action), b.action(o.action_b)};
    }
    auto suff = equivalence_certificate(f, acts, lim);
    auto nec  = homology_certificate(f, o.cap, lim);
    r.result["map"]        = fname;
    r.result["sufficient"] = suff ? to_json(*suff) : Json(nullptr);
    r.result["necessary"]  = to_json(nec);
    if (suff && !nec.passed) {
      fail(r, "an equivalence was found but the homology check fails");
    } else if (!nec.passed) {
      fail(r, "not a weak equivalence: " + nec.detail);
    }
    if (acts) {
      auto t = f_weak_equivalence(f, acts->first, acts->second,
                                  family(o, *acts->first.monoid), o.cap, lim);
      r.result["family"] = to_json(t);
      if (!t.passed) {
        for (auto const& row : t.rows) {
          if (!row.cert.passed) {
            fail(r, "fixed points under " + row.label + ": " + row.cert.detail);
            break;
          }
        }
      }
    }
    return r;
  }

  Report run_gglobal(Options const& o, Bundle const& b) {
    Report      r;
    std::string fname = pick_doc(b.doc, "functors", o.functor, "functor");
    Functor     f     = b.functor(fname);
    if (o.action.empty() || o.action_b.empty()) {
      throw UsageError("give --action and --action-b");
    }
    CatAction a = b.action(o.action), c = b.action(o.action_b);
    auto      t = g_global_we(f, a, c, pairs(o, &b, a.monoid), o.cap, limits_for(o));
    r.result["map"]   = fname;
    r.result["table"] = to_json(t);
    if (!t.passed) {
      for (auto const& row : t.rows) {
        if (!row.cert.passed) {
          fail(r, row.label + ": " + row.cert.detail);
        }
      }
    }
    return r;
  }

  Report run_saturate(Options const& o, Bundle const* b) {
    Report                             r;
    std::optional<ChaoticActionAvatar> av;
    if (!o.cell.empty()) {
      // --cell hprime;k-elements;psi;g  e.g. "cyclic:2;0,1;0:0,1:1;cyclic:2"
      auto parts = split(o.cell, ';');
      if (parts.size() != 4) {
        throw UsageError("--cell is H';K;psi;G");
      }
      MonoidPtr hp   = monoid_option(parts[0], b);
      MonoidPtr g    = monoid_option(parts[3], b);
      Subgroup  k    = parse_subgroup(*hp, parts[1]);
      auto      psi  = parse_phi(*hp, k, *g, parts[2]);
      auto      cell = chaotic_cell(hp, k, psi, g, limits_for(o));
      av             = cell_avatar(cell);
      r.result["input"] = "cell " + o.cell;
    } else {
      if (!b) {
        throw UsageError("give --cell or an input with a category");
      }
      std::string cn = pick(b->categories, o.category, "category");
      MonoidPtr   hp = monoid_option(o.hprime.empty() ? "cyclic:2" : o.hprime, b);
      MonoidPtr   g  = monoid_option(o.g.empty() ? "trivial" : o.g, b);
      av             = trivial_avatar(b->category(cn), hp, g);
      r.result["input"] = cn;
    }
    auto sp  = o.pairs_file.empty()
                   ? all_subgroup_pairs(*av->hprime, *av->g)
                   : subgroup_pairs_from_json(read_json_file(o.pairs_file), *av->hprime, *av->g);
    auto rep = saturation_check(*av, sp, o.cap, limits_for(o));
    r.result["table"] = to_json(rep.table);
    for (auto const& row : rep.table.rows) {
      if (!row.cert.passed) {
        fail(r, "not saturated at " + row.label + ": " + row.cert.detail);
      }
    }
    return r;
  }

  GeneratorSpec generator_spec(Options const& o, bool acyclic) {
    auto tag = model_from_string(o.model);
    if (!tag) {
      throw UsageError("unknown model '" + o.model + "'");
    }
    GeneratorSpec s;
    s.model   = *tag;
    s.n_min   = o.n_min;
    s.n_max   = o.n_max;
    s.acyclic = acyclic;
    if (!o.g.empty()) {
      s.g = monoid_option(o.g, nullptr);
    }
    if (!o.h.empty()) {
      s.h = monoid_option(o.h, nullptr);
    }
    MonoidPtr ambient = (*tag == ModelTag::f_model || *tag == ModelTag::g_homotopy_fp) ? s.g : s.h;
    if (ambient) {
      s.sub = o.sub.empty() ? std::vector<int>{} : parse_subgroup(*ambient, o.sub);
      if (o.sub.empty()) {
        for (std::size_t x = 0; x < ambient->size(); ++x) {
          s.sub.push_back(x);
        }
      }
    }
    if (s.g && s.h) {
      Subgroup dom = s.sub;
      if (*tag == ModelTag::g_global_thin) {
        dom.clear();
        for (std::size_t x = 0; x < s.h->size(); ++x) {
          dom.push_back(x);
        }
      }
      if (o.phi.empty()) {
        s.phi.assign(dom.size(), s.g->unit());
      } else {
        s.phi = parse_phi(*s.h, dom, *s.g, o.phi);
      }
    }
    return s;
  }

  Report run_gens(Options const& o) {
    Report r;
    auto   lim  = limits_for(o);
    auto   gens = generating_maps(generator_spec(o, o.acyclic), lim);
    r.result["model"]      = o.model;
    r.result["generators"] = Json::array();
    for (auto const& g : gens) {
      bool sieve = is_sieve(g.map);
      auto w     = find_dwyer_witness(g.map, DwyerEquivariance{g.source_action, g.target_action}, lim);
      r.result["generators"].push_back({{"name", g.name},
                                        {"source", counts(*g.map.source)},
                                        {"target", counts(*g.map.target)},
                                        {"sieve", sieve},
                                        {"equivariant_dwyer_witness", w.has_value()}});
      if (!sieve || !w) {
        fail(r, g.name + ": " + (!sieve ? "not a sieve" : "no equivariant Dwyer witness"));
      }
    }
    return r;
  }

  Report run_transfer(Options const& o) {
    Report             r;
    auto               lim = limits_for(o);
    auto               I   = generating_maps(generator_spec(o, false), lim);
    auto               J   = generating_maps(generator_spec(o, true), lim);
    RightAdjointAvatar u;
    MonoidPtr          G = I.empty() ? trivial_group() : I.front().cell.monoid;
    if (o.u == "identity") {
      u.kind = RightAdjointAvatar::identity;
    } else if (o.u.rfind("fixed:", 0) == 0) {
      u.kind  = RightAdjointAvatar::fixed_points;
      u.fixed = parse_subgroup(*G, o.u.substr(6));
    } else if (o.u.rfind("fun:", 0) == 0) {
      u.kind = RightAdjointAvatar::fun_chaotic;
      u.t    = monoid_option(o.u.substr(4), nullptr);
    } else {
      throw UsageError("--u is identity, fixed:<elements> or fun:<group>");
    }
    auto rep = check_transfer_conditions(I, J, u, o.cap, lim);
    r.result["u"]                 = o.u;
    r.result["acyclic_images"]    = rep.acyclic_images.lines;
    r.result["homotopy_pushouts"] = rep.homotopy_pushouts.lines;
    r.result["filtered_colimits"] = rep.filtered_colimits.lines;
    if (!rep.acyclic_images.passed) {
      fail(r, "U F j is not a weak equivalence for some acyclic generator");
    }
    if (!rep.homotopy_pushouts.passed) {
      fail(r, "some pushout along a generator is not a homotopy pushout after U");
    }
    if (!rep.filtered_colimits.passed) {
      fail(r, "U does not preserve some finite chain colimit");
    }
    return r;
  }

  Report run_corpus(Options const& o) {
    if (!o.seed) {
      throw UsageError("corpus generation needs --seed");
    }
    Report r;
    Json   bundle;
    auto   add_cat = [&](std::string const& name, CatPtr const& c) {
      bundle["categories"][name] = to_json(*c);
      return content_hash(bundle["categories"][name]);
    };
    auto add_fun = [&](std::string const& name, Functor const& f) {
      bundle["functors"][name] = to_json(f);
    };
    if (o.kind == "spans") {
      auto spans = dwyer_spans(*o.seed, o.count);
      for (std::size_t k = 0; k < spans.size(); ++k) {
        std::string p = "s" + std::to_string(k) + ".";
        add_cat(p + "A", spans[k].i.source);
        add_cat(p + "B", spans[k].i.target);
        add_cat(p + "C", spans[k].c.target);
        add_fun(p + "i", spans[k].i);
        add_fun(p + "c", spans[k].c);
        bundle["descriptions"][p] = spans[k].name;
      }
    } else if (o.kind == "posets") {
      auto ps = posets(*o.seed, o.count);
      for (std::size_t k = 0; k < ps.size(); ++k) {
        add_cat("P" + std::to_string(k), ps[k]);
      }
    } else if (o.kind == "gcats") {
      auto gs = g_categories(*o.seed, o.count);
      for (std::size_t k = 0; k < gs.size(); ++k) {
        std::string n = "G" + std::to_string(k);
        add_cat(n, gs[k].action.carrier);
        bundle["monoids"][n + ".group"] = to_json(*gs[k].action.monoid);
        bundle["actions"][n]            = to_json(gs[k].action);
        bundle["descriptions"][n]       = gs[k].name;
      }
    } else if (o.kind == "espans") {
      auto es = equivariant_spans(*o.seed, o.count);
      for (std::size_t k = 0; k < es.size(); ++k) {
        std::string p = "e" + std::to_string(k) + ".";
        add_cat(p + "A", es[k].i.source);
        add_cat(p + "B", es[k].i.target);
        add_cat(p + "C", es[k].c.target);
        add_fun(p + "i", es[k].i);
        add_fun(p + "c", es[k].c);
        bundle["monoids"][p + "group"] = to_json(*es[k].a.monoid);
        bundle["actions"][p + "a"]     = to_json(es[k].a);
        bundle["actions"][p + "b"]     = to_json(es[k].b);
        bundle["actions"][p + "cact"]  = to_json(es[k].cact);
        bundle["descriptions"][p]      = es[k].name;
      }
    } else {
      throw UsageError("--kind is spans, espans, gcats or posets");
    }
    r.result["seed"]   = *o.seed;
    r.result["kind"]   = o.kind;
    r.result["bundle"] = bundle;
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Output
  ////////////////////////////////////////////////////////////////////////

  void render_text(Json const& j, std::string const& indent, std::ostream& out) {
    for (auto const& [k, v] : j.items()) {
      bool scalar_list = v.is_array()
                         && std::all_of(v.begin(), v.end(), [](Json const& x) { return x.is_primitive(); });
      if (v.is_object() || (v.is_array() && !scalar_list)) {
        out << indent << k << ":\n";
        if (v.is_object()) {
          render_text(v, indent + "  ", out);
        } else {
          for (std::size_t i = 0; i < v.size(); ++i) {
            bool flat = v[i].is_array()
                        && std::all_of(v[i].begin(), v[i].end(),
                                       [](Json const& x) { return x.is_primitive(); });
            if (v[i].is_primitive() || flat) {
              out << indent << "  - " << (v[i].is_string() ? v[i].get<std::string>() : v[i].dump())
                  << "\n";
            } else {
              out << indent << "  - [" << i << "]\n";
              render_text(v[i], indent + "    ", out);
            }
          }
        }
      } else if (v.is_string()) {
        out << indent << k << ": " << v.get<std::string>() << "\n";
      } else {
        out << indent << k << ": " << v.dump() << "\n";
      }
    }
  }

  std::string render(Json const& report, std::string const& format) {
    if (format == "text") {
      std::ostringstream out;
      render_text(report, "", out);
      return out.str();
    }
    return report.dump(2) + "\n";
  }

  char const* status_name(int s) {
    switch (s) {
      case kOk:
        return "ok";
      case kViolated:
        return "violated";
      case kInconclusive:
        return "inconclusive";
      default:
        return "error";
    }
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcat: exact computations with finite categories, group actions and simplicial sets"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s, bool needs_input) {
    if (needs_input) {
      s->add_option("input", o.input, "input JSON bundle")->required();
    } else {
      s->add_option("input", o.input, "optional input JSON bundle");
    }
    s->add_option("-o,--output", o.output, "write the report here instead of stdout");
    s->add_option("--cap", o.cap, "simplicial dimension cap")->check(CLI::Range(1, 8));
    s->add_option("--word-cap", o.word_cap, "word length cap for the presented pushout")
        ->check(CLI::Range(1, 64));
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    s->add_option("--pairs", o.pairs_file, "file with a list of (H, phi) pairs");
    s->add_option("--family", o.family_file, "file with a family of subgroups");
  };

  struct Sub {
    char const* name;
    char const* help;
    bool        input;
  };
  std::vector<Sub> subs = {
      {"validate", "validate every document in a bundle", true},
      {"nerve", "nerve of a category or simplicial set of a complex", true},
      {"homology", "integral homology up to cap - 1", true},
      {"sd", "barycentric subdivision and hSd2 of a complex", true},
      {"ex", "Ex and the homology certificate of e : X -> Ex X", true},
      {"check-dwyer", "search for a Dwyer witness", true},
      {"pushout", "pushout along a Dwyer map, optionally cross-checked", true},
      {"fixed", "fixed-point categories", true},
      {"hofix", "homotopy fixed points for (H, phi) pairs", true},
      {"weq", "weak equivalence certificates", true},
      {"gglobal-weq", "homotopy fixed point certificates for (H, phi) pairs", true},
      {"saturate", "saturation of a cell or a category with trivial action", false},
      {"gens", "generating cofibrations of a model", false},
      {"transfer-check", "hypotheses of the transfer criterion", false},
      {"corpus", "seeded random inputs", false},
  };
  std::map<std::string, CLI::App*> cmd;
  for (auto const& s : subs) {
    CLI::App* c = app.add_subcommand(s.name, s.help);
    common(c, s.input);
    cmd[s.name] = c;
  }
  for (auto const* n : {"nerve", "homology", "ex", "saturate"}) {
    cmd[n]->add_option("--category", o.category, "category name in the bundle");
  }
  for (auto const* n : {"nerve", "homology", "ex", "sd", "weq"}) {
    cmd[n]->add_option("--complex", o.complex, "complex name in the bundle");
  }
  cmd["weq"]->add_option("--complex2", o.complex2, "target complex of an inclusion");
  for (auto const* n : {"check-dwyer", "pushout", "weq", "gglobal-weq"}) {
    cmd[n]->add_option("--functor", o.functor, "functor name in the bundle");
  }
  cmd["pushout"]->add_option("--leg", o.leg, "the second leg c : A -> C");
  cmd["pushout"]->add_flag("--cross-check", o.cross_check, "compare with the presented pushout");
  for (auto const* n : {"check-dwyer", "fixed", "hofix", "weq", "gglobal-weq"}) {
    cmd[n]->add_option("--action", o.action, "action on the source");
  }
  for (auto const* n : {"check-dwyer", "weq", "gglobal-weq"}) {
    cmd[n]->add_option("--action-b", o.action_b, "action on the target");
  }
  for (auto const* n : {"fixed", "weq"}) {
    cmd[n]->add_option("--subgroup", o.sub, "comma-separated elements");
  }
  cmd["saturate"]->add_option("--cell", o.cell, "H';K;psi;G, e.g. cyclic:2;0,1;0:0,1:1;cyclic:2");
  cmd["saturate"]->add_option("--hprime", o.hprime, "group standing in for the chaotic monoid");
  cmd["saturate"]->add_option("--group", o.g, "acting group G");
  for (auto const* n : {"gens", "transfer-check"}) {
    cmd[n]->add_option("--model", o.model, "thomason, global, f_model, g_global_thin, ...");
    cmd[n]->add_option("--group", o.g, "acting group G, e.g. cyclic:2");
    cmd[n]->add_option("--hgroup", o.h, "the group H or H'");
    cmd[n]->add_option("--sub", o.sub, "comma-separated subgroup elements");
    cmd[n]->add_option("--phi", o.phi, "homomorphism as h:g pairs");
    cmd[n]->add_option("--n-min", o.n_min, "least dimension");
    cmd[n]->add_option("--n-max", o.n_max, "greatest dimension");
  }
  cmd["gens"]->add_flag("--acyclic", o.acyclic, "horn inclusions instead of boundaries");
  cmd["transfer-check"]->add_option("--u", o.u, "identity, fixed:<elements> or fun:<group>");
  cmd["corpus"]->add_option("--kind", o.kind, "spans, espans, gcats or posets");
  cmd["corpus"]->add_option("--count", o.count, "number of items")->check(CLI::Range(1, 1000));

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return kUsage;
  }

  std::string name;
  for (auto const& [n, c] : cmd) {
    if (c->parsed()) {
      name = n;
    }
  }

  Json report;
  report["command"]  = name;
  report["version"]  = library_version();
  report["cap"]      = o.cap;
  report["word_cap"] = o.word_cap;
  if (o.seed) {
    report["seed"] = *o.seed;
  }
  int status = kOk;
  try {
    std::optional<Bundle> bundle;
    if (!o.input.empty()) {
      bundle = load(o);
      report["inputs"] = {{"file_hash", content_hash(bundle->doc)}, {"documents", bundle->hashes()}};
    }
    if (!o.pairs_file.empty()) {
      report["pairs_hash"] = content_hash(read_json_file(o.pairs_file));
    }
    if (!o.family_file.empty()) {
      report["family_hash"] = content_hash(read_json_file(o.family_file));
    }
    Report r;
    Bundle const* b = bundle ? &*bundle : nullptr;
    auto need = [&]() -> Bundle const& {
      if (!b) {
        throw UsageError("an input file is required");
      }
      return *b;
    };
    if (name == "validate") r = run_validate(o, need());
    else if (name == "nerve") r = run_nerve(o, need());
    else if (name == "homology") r = run_homology(o, need());
    else if (name == "sd") r = run_sd(o, need());
    else if (name == "ex") r = run_ex(o, need());
    else if (name == "check-dwyer") r = run_check_dwyer(o, need());
    else if (name == "pushout") r = run_pushout(o, need());
    else if (name == "fixed") r = run_fixed(o, need());
    else if (name == "hofix") r = run_hofix(o, need());
    else if (name == "weq") r = run_weq(o, need());
    else if (name == "gglobal-weq") r = run_gglobal(o, need());
    else if (name == "saturate") r = run_saturate(o, b);
    else if (name == "gens") r = run_gens(o);
    else if (name == "transfer-check") r = run_transfer(o);
    else if (name == "corpus") r = run_corpus(o);
    report["result"] = std::move(r.result);
    status           = r.status;
    if (!r.violation.empty()) {
      report["violation"] = r.violation;
    }
  } catch (UsageError const& e) {
    std::cerr << "gcat " << name << ": " << e.what() << "\n";
    return kUsage;
  } catch (IoError const& e) {
    std::cerr << "gcat " << name << ": " << e.what() << "\n";
    return kIo;
  } catch (Error const& e) {
    status              = e.kind() == ErrorKind::size_cap_exceeded ? kInconclusive : kViolated;
    report["violation"] = e.what();
  } catch (Json::exception const& e) {
    status              = kViolated;
    report["violation"] = std::string("malformed_input: ") + e.what();
  }
  report["status"] = status_name(status);

  std::string text = render(report, o.format);
  try {
    if (o.output.empty()) {
      std::cout << text;
      std::cout.flush();
    } else {
      write_text_file(o.output, text);
    }
  } catch (IoError const& e) {
    std::cerr << "gcat: " << e.what() << "\n";
    return kIo;
  }
  return status;
}
