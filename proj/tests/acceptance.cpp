// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "oracle.hpp"
#include "thompson/certificate.hpp"
#include "thompson/sampling.hpp"

using namespace thompson;
using cert::Json;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Artifacts {
  fs::path dir;
  std::vector<fs::path> files;
  void write(const std::string& name, const Json& doc) {
    fs::path p = dir / name;
    std::ofstream(p) << cert::dump(doc);
    files.push_back(p);
  }
};

TreeDiagram from_table(std::initializer_list<std::pair<const char*, const char*>> rows) {
  std::vector<BranchPair> pairs;
  for (auto [u, v] : rows) pairs.push_back({Word(u), Word(v)});
  return TreeDiagram(std::move(pairs));
}

// Affine image of x in [from] onto [to].
mpq_class affine(const std::string& from, const std::string& to, const mpq_class& x) {
  return oracle::word_value(to) + (x - oracle::word_value(from)) * oracle::q(1, static_cast<long>(to.size())) /
                                      oracle::q(1, static_cast<long>(from.size()));
}

// The branch pair from -> to holds pointwise on interior sample points.
bool maps_affinely(const TreeDiagram& d, const std::string& from, const std::string& to) {
  for (long k = 1; k < 8; ++k) {
    mpq_class x = oracle::word_value(from) + oracle::q(1, static_cast<long>(from.size())) * mpq_class(k, 8);
    if (oracle::evaluate(d, x) != affine(from, to, x)) return false;
  }
  return true;
}

Result criterion1() {
  Result r;
  r.require(multiply(x0(), x1()) == from_table({{"00", "0"}, {"010", "10"}, {"011", "110"}, {"1", "111"}}),
            "x0 x1 table");
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    Dyadic x = oracle::random_point(rng, 30);
    mpq_class xq = oracle::q(x);
    r.require(oracle::q(evaluate(x0(), x)) == oracle::x0_formula(xq), "x0 formula at " + x.to_string());
    r.require(oracle::q(evaluate(x1(), x)) == oracle::x1_formula(xq), "x1 formula at " + x.to_string());
  }
  r.detail = r.ok ? "10000 points" : r.detail;
  return r;
}

Result criterion2() {
  Result r;
  Rng rng(2);
  const GroupClass classes[] = {GroupClass::F, GroupClass::T, GroupClass::V};
  for (int i = 0; i < 500; ++i) {
    TreeDiagram a = random_element(classes[i % 3], 12, rng), b = random_element(GroupClass::V, 12, rng),
                c = random_element(GroupClass::V, 12, rng);
    r.require(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)), "associativity");
    r.require(is_identity(multiply(a, invert(a))) && is_identity(multiply(invert(a), a)), "inverse");
    r.require(multiply(identity(), a) == a && multiply(a, identity()) == a, "identity");
    TreeDiagram ab = multiply(a, b);
    for (int k = 0; k < 4; ++k) {
      mpq_class x = oracle::q(oracle::random_point(rng, 16));
      r.require(oracle::evaluate(ab, x) == oracle::evaluate(b, oracle::evaluate(a, x)), "semantic composition");
    }
  }
  r.detail = r.ok ? "500 triples" : r.detail;
  return r;
}

Result criterion3() {
  Result r;
  Rng rng(3);
  for (int i = 0; i < 200 && r.ok; ++i) {
    TreeDiagram g = random_element(GroupClass::F, 14, rng);
    ConjWitness w = conj_witness(g);
    // Endpoint pairs 0^a -> 0^b and 1^c -> 1^d, read off a representative with nonempty endpoint words.
    TreeDiagram rep = g.leaf_count() == 1 ? expand(g, 1) : g;
    const auto& pairs = rep.pairs();
    long a = static_cast<long>(pairs.front().from.size()), b = static_cast<long>(pairs.front().to.size());
    long c = static_cast<long>(pairs.back().from.size()), d = static_cast<long>(pairs.back().to.size());
    r.require(w.m == b && w.n == c + d + 1, "m = b, n = c + d + 1");
    r.require(w.f == conjugate(power(x0x1(), a + c), g), "f = ((x0 x1)^(a+c))^g");
    std::string zm(static_cast<std::size_t>(w.m), '0'), on(static_cast<std::size_t>(w.n), '1');
    r.require(maps_affinely(w.f, zm + "10", on + "0"), "pair 0^m 10 -> 1^n 0");
    r.require(maps_affinely(w.f, zm + "11", on + "10"), "pair 0^m 11 -> 1^(n+1) 0");
    auto [h1, h2] = closure_witnesses(w);
    r.require(maps_affinely(h1, "010", "10"), "pair 010 -> 10");
    r.require(maps_affinely(h2, "011", "10"), "pair 011 -> 10");
  }
  r.detail = r.ok ? "200 conjugators" : r.detail;
  return r;
}

Result criterion4(Artifacts& art) {
  Result r;
  std::vector<Json> docs;
  for (std::size_t i = 0; i < 200 && r.ok; ++i) {
    GenerationCertificate c = random_generation_cert(4, i, 10);
    Verdict v = verify_generation_certificate(c);
    r.require(v.ok, "certificate " + std::to_string(i) + ": " + v.violated);
    // Abelian images generate Z^2 iff the gcd of the 2x2 minors is 1.
    long gcd = 0;
    for (std::size_t p = 0; p < 3; ++p)
      for (std::size_t q = p + 1; q < 3; ++q)
        gcd = std::gcd(gcd, c.images[p].e0 * c.images[q].e1 - c.images[p].e1 * c.images[q].e0);
    r.require(gcd == 1, "abelian surjectivity oracle");
    mpq_class alpha = oracle::q(c.alpha);
    const TreeDiagram& b = c.generators[1];
    r.require(0 < alpha && alpha < 1 && oracle::evaluate(b, alpha) == alpha, "alpha fixed by x1^h");
    mpq_class eps = oracle::q(1, 60);
    r.require(oracle::evaluate(b, alpha - eps) == alpha - eps, "slope 1 left of alpha");
    r.require(oracle::evaluate(b, alpha + eps) == alpha + 2 * eps, "slope 2 right of alpha");
    for (std::size_t k = 0; k < 5; ++k) {
      const ClosureClaim& cl = c.closure[k];
      r.require(cl.word.evaluate(c.generators) == cl.element, "closure word evaluation");
      r.require(maps_affinely(cl.element, cl.pair.from.bits(), cl.pair.to.bits()), "closure pair");
    }
    docs.push_back(cert::generation_document(c));
  }
  art.write("generation.json", cert::suite_document(docs));
  r.detail = r.ok ? "200 certificates" : r.detail;
  return r;
}

Result criterion5(Artifacts& art) {
  Result r;
  Rng rng(5);
  std::vector<Json> docs;
  int unknown = 0, revealing = 0, periodic = 0;
  for (int i = 0; i < 100; ++i) {
    TreeDiagram g = random_nontrivial(i % 2 ? GroupClass::V : GroupClass::T, 10, rng);
    WanderingCertificate c;
    try {
      c = wandering_interval(g);
    } catch (const BudgetExhausted&) {
      ++unknown;
      continue;
    }
    if (auto* rev = std::get_if<RevealingEvidence>(&c.evidence)) {
      ++revealing;
      r.require(verify_revealing(g, *rev).ok, "revealing evidence");
      TreeDiagram acc = g;
      for (int q = 1; q <= 50; ++q, acc = multiply(acc, g)) r.require(!is_identity(acc), "infinite order corroboration");
    } else {
      ++periodic;
      const auto& per = std::get<PeriodicEvidence>(c.evidence);
      r.require(verify_periodic(g, per).ok, "periodic evidence");
      r.require(is_identity(power(g, per.order)), "order oracle");
      if (g.group_class() != GroupClass::V) r.require(per.m == per.order, "T local period equals order");
    }
    Verdict v = verify_wandering(c, 50);
    r.require(v.ok, "verify_wandering: " + v.violated);
    docs.push_back(cert::wandering_document(c));
  }
  r.require(unknown < 10, "unknown rate " + std::to_string(unknown) + "%");
  art.write("wandering.json", cert::suite_document(docs));
  if (r.ok)
    r.detail = std::to_string(revealing) + " revealing, " + std::to_string(periodic) + " periodic, unknown rate " +
               std::to_string(unknown) + "%";
  return r;
}

bool in_open(const DyadicInterval& i, const mpq_class& x) {
  mpq_class lo = oracle::q(i.lo()), hi = oracle::q(i.hi());
  return (lo < x && x < hi) || (lo < x + 1 && x + 1 < hi);
}

Result criterion6(Artifacts& art) {
  Result r;
  PingPongInstance inst = build_pingpong(enumerate_reduced(GroupClass::T, 5), t_instance_intervals(5), true);
  Verdict v = verify_pingpong(inst, 50, 25);
  r.require(v.ok, "premises: " + v.violated);
  auto gammas = inst.gammas();
  for (std::size_t n = 0; n < gammas.size(); ++n) {
    r.require(inst.certs[n].kind == WanderingKind::Wandering, "wandering complement");
    TreeDiagram inv = invert(gammas[n]);
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      if (i == n) continue;
      const DyadicInterval& src = inst.intervals[i];
      for (long s = 1; s < 8; ++s) {
        mpq_class f = oracle::q(src.lo()) + oracle::q(src.length()) * mpq_class(s, 8), b = f;
        for (long k = 1; k <= 25; ++k) {
          f = oracle::evaluate(gammas[n], f);
          b = oracle::evaluate(inv, b);
          if (is_identity(power(gammas[n], k))) continue;
          r.require(in_open(inst.intervals[n], f) && in_open(inst.intervals[n], b), "sampled ping-pong inclusion");
        }
      }
    }
  }
  FreeProductReport rep = free_product_test(inst, 10, 1000, 1);
  r.require(rep.words == 1000 && rep.identities == 0 && rep.inclusion_failures == 0, "free product test");
  art.write("pingpong-t.json", cert::pingpong_t_document(inst, {10, 1000, 1}));
  if (r.ok)
    r.detail = "1000 words, 0 identities, " + std::to_string(rep.inclusion_checks) + " inclusion checks";
  return r;
}

Result criterion7(Artifacts& art) {
  Result r;
  auto intervals = v_instance_intervals(4);
  PingPongInstance inst = build_pingpong(enumerate_reduced(GroupClass::V, 4), intervals, false);
  Verdict v = verify_pingpong(inst, 50, 25);
  r.require(v.ok, "premises: " + v.violated);
  auto gammas = inst.gammas();
  std::vector<TreeDiagram> inverses;
  for (const auto& g : gammas) inverses.push_back(invert(g));
  auto points = orbit_bfs(gammas, Dyadic(0), 6);
  for (const OrbitPoint& p : points) {
    mpq_class x = 0;
    for (const Letter& l : p.word) x = oracle::evaluate(l.inverse ? inverses[l.gen] : gammas[l.gen], x);
    r.require(x == oracle::q(p.point), "orbit witness word");
    r.require(0 <= x && x < mpq_class(1, 4), "orbit point in [0,1/4)");
    if (x != 0) r.require(in_open(intervals[p.word.back().gen], x), "alpha in I_{i_m}");
  }
  OrbitLemmaReport rep = orbit_lemma_check(inst, 6);
  r.require(rep.ok(), "orbit_lemma_check");
  art.write("orbit-v.json", cert::orbit_v_document(inst, 6));
  if (r.ok) r.detail = std::to_string(points.size()) + " orbit points";
  return r;
}

void collect_leaves(const Json& j, const Json::json_pointer& at, std::vector<Json::json_pointer>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) collect_leaves(value, at / key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) collect_leaves(j[i], at / i, out);
  } else {
    out.push_back(at);
  }
}

Json mutate(const Json& leaf, Rng& rng) {
  if (leaf.is_boolean()) return !leaf.get<bool>();
  if (leaf.is_number_unsigned()) return leaf.get<std::uint64_t>() + 1;
  if (leaf.is_number_integer()) return leaf.get<long>() + (uniform_below(rng, 2) ? 1 : -1);
  std::string s = leaf.get<std::string>();
  std::vector<std::size_t> spots;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::isalnum(static_cast<unsigned char>(s[i]))) spots.push_back(i);
  if (spots.empty()) return s + "0";
  char& c = s[spots[uniform_below(rng, spots.size())]];
  if (c == '0' || c == '1') c = c == '0' ? '1' : '0';
  else if (std::isdigit(static_cast<unsigned char>(c))) c = static_cast<char>('0' + (c - '0' + 1) % 10);
  else c = c == 'z' ? 'y' : static_cast<char>(c + 1);
  return s;
}

std::string clause_of(const std::string& message) {
  std::string m = message;
  while (m.rfind("document ", 0) == 0 || m.rfind("certificate ", 0) == 0) m = m.substr(m.find(": ") + 2);
  return m.substr(0, m.find(':'));
}

Result criterion8(const Artifacts& art) {
  Result r;
  for (const fs::path& f : art.files) {
    std::string cmd = std::string(THOMPSON_CLI) + " verify " + f.string() + " > /dev/null 2>&1";
    r.require(std::system(cmd.c_str()) == 0, "fresh-process verify of " + f.filename().string());
  }
  Rng rng(8);
  std::map<std::string, int> clauses;
  for (int i = 0; i < 100; ++i) {
    const fs::path& f = art.files[static_cast<std::size_t>(i) % art.files.size()];
    std::ifstream in(f);
    Json doc = Json::parse(in);
    // Suites are mutated one member at a time so each mutation is judged on its own document.
    Json target = doc.contains("documents") ? doc["documents"][uniform_below(rng, doc["documents"].size())] : doc;
    std::vector<Json::json_pointer> leaves;
    collect_leaves(target, Json::json_pointer(), leaves);
    Json::json_pointer at = leaves[uniform_below(rng, leaves.size())];
    target[at] = mutate(target[at], rng);
    cert::Outcome o = cert::verify_text(cert::dump(target));
    r.require(!o.ok, "mutation survived at " + f.filename().string() + at.to_string());
    if (!o.ok) clauses[clause_of(o.message)]++;
  }
  if (r.ok) {
    std::ostringstream os;
    os << art.files.size() << " files re-verified; 100/100 mutations rejected (";
    bool first = true;
    for (const auto& [clause, n] : clauses) {
      os << (first ? "" : "; ") << clause << " x" << n;
      first = false;
    }
    os << ")";
    r.detail = os.str();
  }
  return r;
}

}  // namespace

int main() {
  Artifacts art{fs::temp_directory_path() / ("thompson-acceptance-" + std::to_string(::getpid())), {}};
  fs::create_directories(art.dir);
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Result()> run;
  };
  std::vector<Criterion> criteria{
      {1, "branch-table oracles", 1, criterion1},
      {2, "group axioms", 30, criterion2},
      {3, "conjugation and closure witnesses", 120, criterion3},
      {4, "generation certificates for F", 180, [&] { return criterion4(art); }},
      {5, "wandering certificates", 180, [&] { return criterion5(art); }},
      {6, "T ping-pong instance", 120, [&] { return criterion6(art); }},
      {7, "V orbit instance", 180, [&] { return criterion7(art); }},
      {8, "certificate round trip and mutation fuzzing", 0, [&] { return criterion8(art); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) r.require(false, "runtime exceeds limit");
    all = all && r.ok;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", r.ok ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), secs);
    std::fflush(stdout);
  }
  fs::remove_all(art.dir);
  return all ? 0 : 1;
}
