// Index-code construction: plain supports for acyclic structures and the
// cycle-aware variant with per-group pre-central selection.
#include "icc/encode.hpp"

#include <algorithm>
#include <functional>

#include "icc/error.hpp"
#include "icc/log.hpp"
#include "icc/oracle.hpp"

namespace icc {

namespace {

constexpr int kSelectionSearchCap = 512;

int required_selections(const Mocg& m) {
  if (m.even_cycle_count()) return 1;
  return m.isolated ? 0 : 2;
}

// One support formula covers every step: vertices off the cycles keep
// their whole out-neighborhood, vertices on cycles drop cycle neighbors
// except those in their own group, and a selected vertex additionally
// omits its group's central vertex (omit = 0 means no omission).
std::vector<int> support_for(const SideInfoGraph& g, const std::vector<OuterCycle>& cycles,
                             const std::set<int>& v_oc, int j, int omit) {
  std::set<int> support{j};
  std::set<int> group = group_vertex_set(cycles, j);
  for (int q : out_neighbors(g, j)) {
    if (!v_oc.count(q))
      support.insert(q);
    else if (group.count(q) && q != omit)
      support.insert(q);
  }
  return {support.begin(), support.end()};
}

Codebook assemble(const SideInfoGraph& g, const std::vector<OuterCycle>& cycles,
                  const std::set<int>& v_oc,
                  const std::map<int, std::vector<int>>& selection) {
  std::map<int, int> omit_for;
  for (const auto& [ccv, picks] : selection)
    for (int p : picks) omit_for[p] = ccv;

  Codebook book;
  CodeSymbol inner;
  inner.label = 0;
  inner.support.assign(g.inner_vertices.begin(), g.inner_vertices.end());
  book.symbols.push_back(std::move(inner));
  for (int j : non_inner_vertices(g)) {
    auto it = omit_for.find(j);
    int omit = it == omit_for.end() ? 0 : it->second;
    book.symbols.push_back({j, support_for(g, cycles, v_oc, j, omit)});
  }
  book.choices = selection;
  return book;
}

[[noreturn]] void throw_selection_conflict(const std::vector<Mocg>& mocgs, int starving_ccv) {
  int other = 0;
  int vertex = 0;
  for (const auto& m : mocgs) {
    if (m.ccv != starving_ccv) continue;
    for (int p : m.pre_central) {
      for (const auto& o : mocgs) {
        if (o.ccv == starving_ccv) continue;
        bool shares = o.ccv == p ||
                      std::find(o.pre_central.begin(), o.pre_central.end(), p) !=
                          o.pre_central.end();
        if (shares) {
          other = o.ccv;
          vertex = p;
          break;
        }
      }
      if (other != 0) break;
    }
  }
  throw Error(ErrorKind::SelectionConflict,
              "no admissible pre-central selection for the group centered at " +
                  std::to_string(starving_ccv),
              {{"mocgs", {starving_ccv, other}}, {"vertex", vertex}});
}

}  // namespace

const CodeSymbol* Codebook::find(int label) const {
  for (const auto& s : symbols)
    if (s.label == label) return &s;
  return nullptr;
}

const CodeSymbol& Codebook::inner_symbol() const {
  const CodeSymbol* s = find(0);
  if (s == nullptr)
    throw Error(ErrorKind::BadDocument, "codebook has no inner symbol");
  return *s;
}

Codebook encode_construction1(const SideInfoGraph& g, const std::vector<RootedTree>& trees) {
  (void)trees;
  auto cycles = find_outer_cycles(g);
  if (!cycles.empty()) {
    Json witness = Json::array();
    for (std::size_t i = 0; i < cycles.size() && i < 4; ++i) witness.push_back(cycles[i].vertices);
    throw Error(ErrorKind::OuterCyclesPresent,
                "the baseline construction needs a cycle-free non-inner part, found " +
                    std::to_string(cycles.size()) + " outer cycles",
                {{"count", cycles.size()}, {"cycles", std::move(witness)}});
  }
  return construction1_supports(g);
}

Codebook construction1_supports(const SideInfoGraph& g) {
  Codebook book;
  CodeSymbol inner;
  inner.label = 0;
  inner.support.assign(g.inner_vertices.begin(), g.inner_vertices.end());
  book.symbols.push_back(std::move(inner));
  for (int j : non_inner_vertices(g)) {
    std::set<int> support{j};
    for (int q : out_neighbors(g, j)) support.insert(q);
    book.symbols.push_back({j, {support.begin(), support.end()}});
  }
  return book;
}

Codebook encode_construction2(const SideInfoGraph& g, const std::vector<RootedTree>&,
                              const std::vector<Mocg>& mocgs,
                              const SelectionOverrides& overrides) {
  auto cycles = find_outer_cycles(g);
  std::set<int> v_oc = all_outer_cycle_vertices(cycles);
  std::set<int> ccvs;
  for (const auto& m : mocgs) ccvs.insert(m.ccv);

  // Validate overrides before anything else: unknown group or wrong
  // shape is a usage problem, grabbing another group's vertex is a
  // selection conflict.
  for (const auto& [ccv, picks] : overrides.by_ccv) {
    const Mocg* m = nullptr;
    for (const auto& candidate : mocgs)
      if (candidate.ccv == ccv) m = &candidate;
    if (m == nullptr)
      throw Error(ErrorKind::Usage,
                  "--select names vertex " + std::to_string(ccv) +
                      ", which is not the central vertex of any group",
                  {{"ccv", ccv}});
    int need = required_selections(*m);
    if (static_cast<int>(picks.size()) != need)
      throw Error(ErrorKind::Usage,
                  "group centered at " + std::to_string(ccv) + " selects exactly " +
                      std::to_string(need) + " vertices, got " + std::to_string(picks.size()),
                  {{"ccv", ccv}, {"required", need}, {"got", picks.size()}});
    std::set<int> dedup(picks.begin(), picks.end());
    if (dedup.size() != picks.size())
      throw Error(ErrorKind::Usage,
                  "--select lists a vertex twice for the group centered at " +
                      std::to_string(ccv),
                  {{"ccv", ccv}});
    for (int p : picks) {
      if (std::find(m->pre_central.begin(), m->pre_central.end(), p) == m->pre_central.end())
        throw Error(ErrorKind::Usage,
                    "vertex " + std::to_string(p) + " is not pre-central for the group at " +
                        std::to_string(ccv),
                    {{"ccv", ccv}, {"vertex", p}});
      if (ccvs.count(p) && p != ccv)
        throw Error(ErrorKind::SelectionConflict,
                    "vertex " + std::to_string(p) + " is the central vertex of another group",
                    {{"mocgs", {ccv, p}}, {"vertex", p}});
    }
  }
  std::map<int, int> taken_by;
  for (const auto& [ccv, picks] : overrides.by_ccv)
    for (int p : picks) {
      auto [it, fresh] = taken_by.insert({p, ccv});
      if (!fresh)
        throw Error(ErrorKind::SelectionConflict,
                    "vertex " + std::to_string(p) + " is selected for two groups",
                    {{"mocgs", {it->second, ccv}}, {"vertex", p}});
    }

  // Default policy: smallest admissible pre-centrals, skipping central
  // vertices of other groups and vertices some group already selected.
  std::map<int, std::vector<int>> selection;
  for (const auto& [ccv, picks] : overrides.by_ccv) selection[ccv] = picks;
  int starving_ccv = 0;
  for (const auto& m : mocgs) {
    if (selection.count(m.ccv)) continue;
    int need = required_selections(m);
    std::vector<int> pick;
    for (int p : m.pre_central) {
      if (static_cast<int>(pick.size()) == need) break;
      if (ccvs.count(p) || taken_by.count(p)) continue;
      pick.push_back(p);
    }
    if (static_cast<int>(pick.size()) < need) {
      starving_ccv = m.ccv;
      break;
    }
    for (int p : pick) taken_by[p] = m.ccv;
    selection[m.ccv] = pick;
  }
  if (starving_ccv == 0) return assemble(g, cycles, v_oc, selection);

  // The greedy pass starved somewhere. Search selection tuples for the
  // non-overridden groups and keep the first one the rank oracle
  // certifies as fully decodable.
  logf(1, "encode: greedy selection starved at group %d, searching tuples", starving_ccv);
  std::vector<const Mocg*> open;
  for (const auto& m : mocgs)
    if (!overrides.by_ccv.count(m.ccv)) open.push_back(&m);

  std::map<int, std::vector<int>> chosen;
  for (const auto& [ccv, picks] : overrides.by_ccv) chosen[ccv] = picks;
  std::set<int> used;
  for (const auto& [p, ccv] : taken_by) used.insert(p);
  int attempts = 0;

  std::function<bool(std::size_t)> search = [&](std::size_t idx) -> bool {
    if (idx == open.size()) {
      if (++attempts > kSelectionSearchCap) return false;
      Codebook book = assemble(g, cycles, v_oc, chosen);
      return certify(g, book).all_decodable();
    }
    const Mocg& m = *open[idx];
    int need = required_selections(m);
    std::vector<int> pool;
    for (int p : m.pre_central)
      if (!ccvs.count(p) && !used.count(p)) pool.push_back(p);
    if (static_cast<int>(pool.size()) < need) return false;

    std::vector<int> combo(need);
    std::function<bool(int, int)> pick = [&](int start, int depth) -> bool {
      if (depth == need) {
        chosen[m.ccv] = combo;
        for (int p : combo) used.insert(p);
        bool ok = search(idx + 1);
        for (int p : combo) used.erase(p);
        if (!ok) chosen.erase(m.ccv);
        return ok;
      }
      for (int s = start; s < static_cast<int>(pool.size()); ++s) {
        combo[depth] = pool[s];
        if (pick(s + 1, depth + 1)) return true;
      }
      return false;
    };
    if (need == 0) {
      chosen[m.ccv] = {};
      if (search(idx + 1)) return true;
      chosen.erase(m.ccv);
      return false;
    }
    return pick(0, 0);
  };

  if (search(0)) return assemble(g, cycles, v_oc, chosen);
  throw_selection_conflict(mocgs, starving_ccv);
}

std::map<int, Message> transmit(const Codebook& book, const MessageVector& msgs) {
  if (msgs.values.empty())
    throw Error(ErrorKind::LengthMismatch, "no messages to transmit");
  std::size_t len = msgs.values.front().size();
  for (const auto& m : msgs.values)
    if (m.size() != len)
      throw Error(ErrorKind::LengthMismatch, "messages must share one byte length");

  std::map<int, Message> tx;
  for (const auto& symbol : book.symbols) {
    Message acc(len, 0);
    for (int v : symbol.support) {
      if (v < 1 || v > static_cast<int>(msgs.values.size()))
        throw Error(ErrorKind::LengthMismatch,
                    "symbol support references vertex " + std::to_string(v) + " but only " +
                        std::to_string(msgs.values.size()) + " messages are present",
                    {{"vertex", v}, {"messages", msgs.values.size()}});
      acc = xor_bytes(acc, msgs.values[v - 1]);
    }
    tx[symbol.label] = std::move(acc);
  }
  return tx;
}

Json codebook_to_json(const Codebook& book) {
  Json doc;
  Json symbols = Json::object();
  symbols["W_I"] = book.inner_symbol().support;
  for (const auto& s : book.symbols)
    if (s.label != 0) symbols["W_" + std::to_string(s.label)] = s.support;
  doc["symbols"] = std::move(symbols);
  Json choices = Json::object();
  for (const auto& [ccv, picks] : book.choices) choices[std::to_string(ccv)] = picks;
  doc["choices"] = std::move(choices);
  return doc;
}

Codebook codebook_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("symbols") || !doc["symbols"].is_object() ||
      !doc["symbols"].contains("W_I"))
    throw Error(ErrorKind::BadDocument, "codebook document needs a symbols object with W_I");
  Codebook book;
  CodeSymbol inner;
  inner.label = 0;
  for (const auto& v : doc["symbols"]["W_I"]) inner.support.push_back(v.get<int>());
  book.symbols.push_back(std::move(inner));
  std::map<int, std::vector<int>> by_label;
  for (const auto& [key, value] : doc["symbols"].items()) {
    if (key == "W_I") continue;
    int label = 0;
    try {
      if (key.rfind("W_", 0) != 0) throw std::invalid_argument(key);
      std::size_t used = 0;
      label = std::stoi(key.substr(2), &used);
      if (used != key.size() - 2 || label < 1) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadDocument,
                  "codebook symbol key '" + key + "' is not W_I or W_<vertex>");
    }
    std::vector<int> support;
    for (const auto& v : value) support.push_back(v.get<int>());
    by_label[label] = std::move(support);
  }
  for (auto& [label, support] : by_label) book.symbols.push_back({label, std::move(support)});
  if (doc.contains("choices"))
    for (const auto& [key, value] : doc["choices"].items()) {
      std::vector<int> picks;
      for (const auto& v : value) picks.push_back(v.get<int>());
      book.choices[std::stoi(key)] = std::move(picks);
    }
  return book;
}

Json transmissions_to_json(const std::map<int, Message>& tx) {
  Json body = Json::object();
  auto inner = tx.find(0);
  if (inner != tx.end()) body["I"] = to_hex(inner->second);
  for (const auto& [label, payload] : tx)
    if (label != 0) body[std::to_string(label)] = to_hex(payload);
  return Json{{"transmissions", std::move(body)}};
}

std::map<int, Message> transmissions_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("transmissions") || !doc["transmissions"].is_object())
    throw Error(ErrorKind::BadDocument, "transmissions document needs a transmissions object");
  std::map<int, Message> tx;
  for (const auto& [key, value] : doc["transmissions"].items()) {
    int label = 0;
    if (key != "I") {
      try {
        label = std::stoi(key);
      } catch (const std::exception&) {
        throw Error(ErrorKind::BadDocument,
                    "transmission key '" + key + "' is neither I nor a vertex id");
      }
    }
    tx[label] = from_hex(value.get<std::string>());
  }
  return tx;
}

}  // namespace icc
