#include "thompson/certificate.hpp"

#include <sstream>

namespace thompson::cert {

namespace {

std::string pair_text(const BranchPair& p) { return p.from.to_string() + " -> " + p.to.to_string(); }

BranchPair pair_from_text(const std::string& s) {
  auto arrow = s.find(" -> ");
  if (arrow == std::string::npos) throw ParseError("branch pair without ' -> ': '" + s + "'");
  return {Word::parse(s.substr(0, arrow)), Word::parse(s.substr(arrow + 4))};
}

Json words_json(const std::vector<Word>& ws) {
  Json j = Json::array();
  for (const Word& w : ws) j.push_back(w.to_string());
  return j;
}

const char* symbol_name(std::size_t i) {
  static const char* names[] = {"A", "B", "C"};
  return names[i];
}

std::size_t symbol_index(const std::string& s) {
  for (std::size_t i = 0; i < 3; ++i)
    if (s == symbol_name(i)) return i;
  throw ParseError("unknown generator symbol '" + s + "'");
}

WanderingKind kind_from(const std::string& s) {
  if (s == to_string(WanderingKind::Wandering)) return WanderingKind::Wandering;
  if (s == to_string(WanderingKind::Weak)) return WanderingKind::Weak;
  throw ParseError("unknown wandering kind '" + s + "'");
}

Json report_json(const FreeProductReport& r) {
  return Json{{"words", r.words},
              {"identities", r.identities},
              {"inclusion_checks", r.inclusion_checks},
              {"inclusion_failures", r.inclusion_failures},
              {"max_leaves", r.max_leaves},
              {"total_leaves", r.total_leaves}};
}

FreeProductReport report_from(const Json& j) {
  FreeProductReport r;
  r.words = j.at("words").get<std::size_t>();
  r.identities = j.at("identities").get<std::size_t>();
  r.inclusion_checks = j.at("inclusion_checks").get<std::size_t>();
  r.inclusion_failures = j.at("inclusion_failures").get<std::size_t>();
  r.max_leaves = j.at("max_leaves").get<std::size_t>();
  r.total_leaves = j.at("total_leaves").get<std::size_t>();
  return r;
}

Json orbit_json(const OrbitLemmaReport& r) {
  return Json{{"points", r.points}, {"checked", r.checked}, {"failures", r.failures}, {"inside_quarter", r.inside_quarter}};
}

OrbitLemmaReport orbit_from(const Json& j) {
  OrbitLemmaReport r;
  r.points = j.at("points").get<std::size_t>();
  r.checked = j.at("checked").get<std::size_t>();
  r.failures = j.at("failures").get<std::size_t>();
  r.inside_quarter = j.at("inside_quarter").get<bool>();
  return r;
}

// Periodic evidence with a full-length orbit supports the wandering kind; a
// certificate must claim the strongest kind its evidence supports.
WanderingKind strongest_kind(const WanderingCertificate& c) {
  if (auto* p = std::get_if<PeriodicEvidence>(&c.evidence))
    return p->m == p->order ? WanderingKind::Wandering : WanderingKind::Weak;
  return WanderingKind::Wandering;
}

Outcome failure(std::string msg) { return {false, std::move(msg)}; }

Outcome check_wandering_form(const WanderingCertificate& c) {
  if (c.gamma != reduce(c.gamma)) return failure("canonical form: gamma is not reduced");
  if (c.kind != strongest_kind(c)) return failure("canonical form: kind is not the strongest supported by the evidence");
  return {};
}

Outcome check_instance_form(const PingPongInstance& inst) {
  for (std::size_t n = 0; n < inst.certs.size(); ++n) {
    const ConjugatedWandering& cw = inst.certs[n];
    if (Outcome o = check_wandering_form(cw.base); !o.ok)
      return failure("certificate " + std::to_string(n + 1) + ": " + o.message);
    if (inst.reps[n] != reduce(inst.reps[n]))
      return failure("canonical form: representative " + std::to_string(n + 1) + " is not reduced");
    if (cw.conjugator != reduce(cw.conjugator))
      return failure("canonical form: conjugator " + std::to_string(n + 1) + " is not reduced");
  }
  return {};
}

// Certificates are deterministic functions of their inputs; a stored one must
// match a fresh construction. Inputs beyond the default budgets are skipped.
Outcome check_reconstruction(const WanderingCertificate& c) {
  try {
    if (wandering_interval(c.gamma) != c) return failure("canonical form: certificate differs from its reconstruction");
  } catch (const BudgetExhausted&) {
  }
  return {};
}

Outcome check_reconstruction(const PingPongInstance& inst, bool require_wandering) {
  try {
    if (build_pingpong(inst.reps, inst.intervals, require_wandering) != inst)
      return failure("canonical form: instance differs from its reconstruction");
  } catch (const BudgetExhausted&) {
  }
  return {};
}

Outcome verify_body(const std::string& type, const Json& doc);

}  // namespace

Json to_json(const TreeDiagram& d) {
  Json j = Json::array();
  for (const BranchPair& p : d.pairs()) j.push_back(pair_text(p));
  return j;
}

TreeDiagram diagram_from_json(const Json& j) {
  std::string text;
  for (const Json& line : j) text += line.get<std::string>() + "\n";
  return TreeDiagram::parse(text);
}

RegionSet parse_region(std::string_view text) {
  if (text == "{}") return RegionSet();
  std::vector<Piece> pieces;
  std::size_t start = 0;
  for (;;) {
    std::size_t sep = text.find(" U ", start);
    std::string_view part = text.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
    if (part.size() < 5) throw ParseError("bad region piece '" + std::string(part) + "'");
    char open_c = part.front(), close_c = part.back();
    if ((open_c != '(' && open_c != '[') || (close_c != ')' && close_c != ']'))
      throw ParseError("bad region brackets '" + std::string(part) + "'");
    std::string_view body = part.substr(1, part.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParseError("region piece without comma '" + std::string(part) + "'");
    pieces.push_back({Dyadic::parse(body.substr(0, comma)), Dyadic::parse(body.substr(comma + 1)), open_c == '[',
                      close_c == ']'});
    if (sep == std::string_view::npos) break;
    start = sep + 3;
  }
  RegionSet r(std::move(pieces));
  if (r.to_string() != text) throw ParseError("region not in canonical form: '" + std::string(text) + "'");
  return r;
}

Json to_json(const GenerationCertificate& c) {
  Json j;
  j["h"] = to_json(c.h);
  j["g"] = to_json(c.g);
  j["generators"] = Json{{"A", to_json(c.generators[0])}, {"B", to_json(c.generators[1])}, {"C", to_json(c.generators[2])}};
  Json images = Json::object();
  for (std::size_t i = 0; i < 3; ++i) images[symbol_name(i)] = Json::array({c.images[i].e0, c.images[i].e1});
  j["abelian_images"] = images;
  j["surjectivity"] = Json{{"unit_e0", c.surjectivity.unit_e0}, {"unit_e1", c.surjectivity.unit_e1}};
  j["slope_break"] = Json{{"element", symbol_name(c.slope_break_index)}, {"alpha", c.alpha.to_string()}};
  j["endpoint_exponents"] = Json{{"a", c.exponents.a}, {"b", c.exponents.b}, {"c", c.exponents.c}, {"d", c.exponents.d}};
  j["m"] = c.m;
  j["n"] = c.n;
  Json closure = Json::array();
  for (const ClosureClaim& cl : c.closure)
    closure.push_back(Json{{"pair", pair_text(cl.pair)}, {"word", cl.word.to_string()}, {"element", to_json(cl.element)}});
  j["closure"] = closure;
  if (c.seed) j["sample"] = Json{{"seed", *c.seed}, {"index", *c.sample_index}, {"max_leaves", *c.max_leaves}};
  return j;
}

GenerationCertificate generation_from_json(const Json& j) {
  GenerationCertificate c;
  c.h = diagram_from_json(j.at("h"));
  c.g = diagram_from_json(j.at("g"));
  for (std::size_t i = 0; i < 3; ++i) {
    c.generators[i] = diagram_from_json(j.at("generators").at(symbol_name(i)));
    const Json& img = j.at("abelian_images").at(symbol_name(i));
    if (img.size() != 2) throw ParseError("abelian image needs two entries");
    c.images[i] = {img.at(0).get<long>(), img.at(1).get<long>()};
  }
  c.surjectivity.unit_e0 = j.at("surjectivity").at("unit_e0").get<std::vector<long>>();
  c.surjectivity.unit_e1 = j.at("surjectivity").at("unit_e1").get<std::vector<long>>();
  c.slope_break_index = symbol_index(j.at("slope_break").at("element").get<std::string>());
  c.alpha = Dyadic::parse(j.at("slope_break").at("alpha").get<std::string>());
  const Json& ex = j.at("endpoint_exponents");
  c.exponents = {ex.at("a").get<long>(), ex.at("b").get<long>(), ex.at("c").get<long>(), ex.at("d").get<long>()};
  c.m = j.at("m").get<long>();
  c.n = j.at("n").get<long>();
  const Json& closure = j.at("closure");
  if (closure.size() != 5) throw ParseError("closure needs five entries");
  for (std::size_t i = 0; i < 5; ++i) {
    c.closure[i].pair = pair_from_text(closure[i].at("pair").get<std::string>());
    c.closure[i].word = GeneratorWord::parse(closure[i].at("word").get<std::string>());
    c.closure[i].element = diagram_from_json(closure[i].at("element"));
  }
  if (j.contains("sample")) {
    const Json& s = j.at("sample");
    c.seed = s.at("seed").get<std::uint64_t>();
    c.sample_index = s.at("index").get<std::size_t>();
    c.max_leaves = s.at("max_leaves").get<std::size_t>();
  }
  return c;
}

Json to_json(const WanderingCertificate& c) {
  Json j;
  j["gamma"] = to_json(c.gamma);
  j["class"] = to_string(c.gamma.group_class());
  j["U"] = c.U.to_string();
  j["kind"] = to_string(c.kind);
  if (auto* rev = std::get_if<RevealingEvidence>(&c.evidence)) {
    j["evidence"] = Json{{"type", "revealing"},
                         {"diagram", to_json(rev->diagram)},
                         {"v", rev->v.to_string()},
                         {"ws", words_json(rev->ws)},
                         {"k", rev->k + 1},
                         {"r", rev->r},
                         {"j", c.j + 1}};
  } else {
    const auto& per = std::get<PeriodicEvidence>(c.evidence);
    j["evidence"] = Json{{"type", "periodic"},
                         {"order", per.order},
                         {"x", per.x.to_string()},
                         {"m", per.m},
                         {"eps", per.eps.to_string()}};
  }
  return j;
}

WanderingCertificate wandering_from_json(const Json& j) {
  WanderingCertificate c;
  c.gamma = diagram_from_json(j.at("gamma"));
  c.U = DyadicInterval::parse(j.at("U").get<std::string>());
  c.kind = kind_from(j.at("kind").get<std::string>());
  const Json& ev = j.at("evidence");
  std::string type = ev.at("type").get<std::string>();
  if (type == "revealing") {
    RevealingEvidence rev;
    rev.diagram = diagram_from_json(ev.at("diagram"));
    rev.v = Word::parse(ev.at("v").get<std::string>());
    for (const Json& w : ev.at("ws")) rev.ws.push_back(Word::parse(w.get<std::string>()));
    auto k = ev.at("k").get<std::size_t>();
    auto jj = ev.at("j").get<std::size_t>();
    if (k == 0 || jj == 0) throw ParseError("k and j are 1-based");
    rev.k = k - 1;
    c.j = jj - 1;
    rev.r = ev.at("r").get<long>();
    c.evidence = std::move(rev);
  } else if (type == "periodic") {
    PeriodicEvidence per;
    per.order = ev.at("order").get<long>();
    per.x = Dyadic::parse(ev.at("x").get<std::string>());
    per.m = ev.at("m").get<long>();
    per.eps = Dyadic::parse(ev.at("eps").get<std::string>());
    c.evidence = per;
  } else {
    throw ParseError("unknown evidence type '" + type + "'");
  }
  return c;
}

Json to_json(const ConjugatedWandering& c) {
  Json j;
  j["base"] = to_json(c.base);
  j["conjugator"] = to_json(c.conjugator);
  j["source"] = c.source.to_string();
  j["target"] = c.target.to_string();
  j["region"] = c.region.to_string();
  j["gamma_conj"] = to_json(c.gamma_conj);
  j["kind"] = to_string(c.kind);
  return j;
}

ConjugatedWandering conjugated_from_json(const Json& j) {
  ConjugatedWandering c;
  c.base = wandering_from_json(j.at("base"));
  c.conjugator = diagram_from_json(j.at("conjugator"));
  c.source = DyadicInterval::parse(j.at("source").get<std::string>());
  c.target = DyadicInterval::parse(j.at("target").get<std::string>());
  c.region = parse_region(j.at("region").get<std::string>());
  c.gamma_conj = diagram_from_json(j.at("gamma_conj"));
  c.kind = kind_from(j.at("kind").get<std::string>());
  return c;
}

Json to_json(const PingPongInstance& inst) {
  Json reps = Json::array(), intervals = Json::array(), certs = Json::array();
  for (const auto& r : inst.reps) reps.push_back(to_json(r));
  for (const auto& i : inst.intervals) intervals.push_back(i.to_string());
  for (const auto& c : inst.certs) certs.push_back(to_json(c));
  return Json{{"representatives", reps}, {"intervals", intervals}, {"certificates", certs}};
}

PingPongInstance pingpong_from_json(const Json& j) {
  PingPongInstance inst;
  for (const Json& r : j.at("representatives")) inst.reps.push_back(diagram_from_json(r));
  for (const Json& i : j.at("intervals")) inst.intervals.push_back(DyadicInterval::parse(i.get<std::string>()));
  for (const Json& c : j.at("certificates")) inst.certs.push_back(conjugated_from_json(c));
  return inst;
}

Json document(const std::string& type, Json body) {
  Json doc{{"format", kFormat}, {"version", kVersion}, {"type", type}};
  for (auto& [key, value] : body.items()) doc[key] = std::move(value);
  return doc;
}

Json generation_document(const GenerationCertificate& c) {
  return document("generation", Json{{"certificate", to_json(c)}});
}

Json wandering_document(const WanderingCertificate& c) {
  return document("wandering", Json{{"certificate", to_json(c)}});
}

Json suite_document(const std::vector<Json>& documents) {
  return document("suite", Json{{"documents", documents}});
}

Json pingpong_t_document(const PingPongInstance& inst, const FreeProductParams& params) {
  FreeProductReport rep = free_product_test(inst, params.max_len, params.trials, params.seed);
  return document("pingpong-t",
                  Json{{"instance", to_json(inst)},
                       {"free_product",
                        Json{{"max_len", params.max_len},
                             {"trials", params.trials},
                             {"seed", params.seed},
                             {"report", report_json(rep)}}}});
}

Json orbit_v_document(const PingPongInstance& inst, std::size_t max_word_len) {
  OrbitLemmaReport rep = orbit_lemma_check(inst, max_word_len);
  return document("orbit-v", Json{{"instance", to_json(inst)},
                                  {"orbit", Json{{"max_word_len", max_word_len}, {"report", orbit_json(rep)}}}});
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

namespace {

Outcome verify_generation_doc(const Json& doc) {
  GenerationCertificate c = generation_from_json(doc.at("certificate"));
  if (document("generation", Json{{"certificate", to_json(c)}}) != doc)
    return failure("canonical form: document differs from its re-serialization");
  Verdict v = verify_generation_certificate(c);
  if (!v) return failure(v.violated);
  return {true, "generation certificate verified: <x0, x1^h, (x0 x1)^g> = F"};
}

Outcome verify_wandering_doc(const Json& doc) {
  WanderingCertificate c = wandering_from_json(doc.at("certificate"));
  if (wandering_document(c) != doc) return failure("canonical form: document differs from its re-serialization");
  if (Outcome o = check_wandering_form(c); !o.ok) return o;
  Verdict v = verify_wandering(c, kWanderingHorizon);
  if (!v) return failure(v.violated);
  if (Outcome o = check_reconstruction(c); !o.ok) return o;
  return {true, std::string("wandering certificate verified: U = ") + c.U.to_string() + " is " + to_string(c.kind)};
}

Outcome verify_pingpong_doc(const Json& doc) {
  PingPongInstance inst = pingpong_from_json(doc.at("instance"));
  const Json& fp = doc.at("free_product");
  FreeProductParams params{fp.at("max_len").get<std::size_t>(), fp.at("trials").get<std::size_t>(),
                           fp.at("seed").get<std::uint64_t>()};
  FreeProductReport recorded = report_from(fp.at("report"));
  Json again = document("pingpong-t", Json{{"instance", to_json(inst)},
                                           {"free_product", Json{{"max_len", params.max_len},
                                                                 {"trials", params.trials},
                                                                 {"seed", params.seed},
                                                                 {"report", report_json(recorded)}}}});
  if (again != doc) return failure("canonical form: document differs from its re-serialization");
  if (Outcome o = check_instance_form(inst); !o.ok) return o;
  for (std::size_t n = 0; n < inst.reps.size(); ++n) {
    if (inst.reps[n].group_class() == GroupClass::V)
      return failure("T instance: representative " + std::to_string(n + 1) + " is not in T");
    if (inst.certs[n].kind != WanderingKind::Wandering)
      return failure("T instance: certificate " + std::to_string(n + 1) + " is only weakly wandering");
  }
  Verdict v = verify_pingpong(inst, kWanderingHorizon, kPingPongPowers);
  if (!v) return failure(v.violated);
  if (Outcome o = check_reconstruction(inst, true); !o.ok) return o;
  FreeProductReport rerun = free_product_test(inst, params.max_len, params.trials, params.seed);
  if (!(rerun == recorded)) return failure("free product: recorded report does not match a re-run");
  if (rerun.identities != 0) return failure("free product: a reduced word evaluated to the identity");
  if (rerun.inclusion_failures != 0) return failure("free product: an inclusion gamma_n^k(I_i) in I_n failed");
  return {true, "ping-pong instance verified: " + std::to_string(inst.reps.size()) + " representatives, " +
                    std::to_string(rerun.words) + " reduced words, 0 identities"};
}

Outcome verify_orbit_doc(const Json& doc) {
  PingPongInstance inst = pingpong_from_json(doc.at("instance"));
  const Json& orbit = doc.at("orbit");
  auto len = orbit.at("max_word_len").get<std::size_t>();
  OrbitLemmaReport recorded = orbit_from(orbit.at("report"));
  Json again = document("orbit-v", Json{{"instance", to_json(inst)},
                                        {"orbit", Json{{"max_word_len", len}, {"report", orbit_json(recorded)}}}});
  if (again != doc) return failure("canonical form: document differs from its re-serialization");
  if (Outcome o = check_instance_form(inst); !o.ok) return o;
  RegionSet quarter(DyadicInterval::open(Dyadic(0), Dyadic::pow2(-2)));
  for (std::size_t n = 0; n < inst.intervals.size(); ++n)
    if (!RegionSet(inst.intervals[n]).subset_of(quarter))
      return failure("V instance: interval " + std::to_string(n + 1) + " is not inside (0,1/4)");
  Verdict v = verify_pingpong(inst, kWanderingHorizon, kPingPongPowers);
  if (!v) return failure(v.violated);
  if (Outcome o = check_reconstruction(inst, false); !o.ok) return o;
  OrbitLemmaReport rerun = orbit_lemma_check(inst, len);
  if (!(rerun == recorded)) return failure("orbit: recorded report does not match a re-run");
  if (!rerun.inside_quarter) return failure("orbit: a point of the orbit of 0 left [0,1/4)");
  if (rerun.failures != 0) return failure("orbit: a witness word ends outside its last interval");
  return {true, "orbit instance verified: " + std::to_string(rerun.points) + " orbit points inside [0,1/4)"};
}

Outcome verify_body(const std::string& type, const Json& doc) {
  if (type == "generation") return verify_generation_doc(doc);
  if (type == "wandering") return verify_wandering_doc(doc);
  if (type == "pingpong-t") return verify_pingpong_doc(doc);
  if (type == "orbit-v") return verify_orbit_doc(doc);
  if (type == "suite") {
    const Json& docs = doc.at("documents");
    if (suite_document(docs.get<std::vector<Json>>()) != doc)
      return failure("canonical form: document differs from its re-serialization");
    for (std::size_t i = 0; i < docs.size(); ++i) {
      Outcome o = verify_document(docs[i]);
      if (!o.ok) return failure("document " + std::to_string(i + 1) + ": " + o.message);
    }
    return {true, "suite verified: " + std::to_string(docs.size()) + " documents"};
  }
  return failure("unknown document type '" + type + "'");
}

}  // namespace

Outcome verify_document(const Json& doc) {
  try {
    if (!doc.is_object()) return failure("document is not a JSON object");
    if (doc.value("format", "") != kFormat) return failure("format: expected '" + std::string(kFormat) + "'");
    if (doc.at("version") != kVersion) return failure("version: unsupported");
    return verify_body(doc.at("type").get<std::string>(), doc);
  } catch (const std::exception& e) {
    return failure(std::string("malformed document: ") + e.what());
  }
}

Outcome verify_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    return failure(std::string("json: ") + e.what());
  }
  return verify_document(doc);
}

}  // namespace thompson::cert
