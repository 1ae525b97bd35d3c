#include "rederiv/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "rederiv/pretty.hpp"

namespace rederiv {

std::size_t Dfa::symbol_index(char a) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == a) return i;
  throw std::invalid_argument(std::string("symbol '") + a +
                              "' is outside the automaton's alphabet");
}

Dfa compile(ExprId e, const OperatorRegistry& reg, ExprPool& pool,
            std::size_t max_states) {
  std::string offending;
  if (!is_compile_eligible(e, reg, pool, &offending))
    throw capability_error(offending,
                           "cannot compile: operator '" + offending +
                               "' is not usable in automaton construction");
  Dfa d;
  d.alphabet = reg.alphabet();
  HookCache cache;
  std::unordered_map<ExprId, std::uint32_t> index;
  std::deque<std::uint32_t> work;
  auto add_state = [&](ExprId s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (d.states.size() >= max_states) throw state_cap_error(max_states);
    auto id = static_cast<std::uint32_t>(d.states.size());
    d.states.push_back(s);
    index.emplace(s, id);
    work.push_back(id);
    return id;
  };
  add_state(e);
  while (!work.empty()) {
    std::uint32_t i = work.front();
    work.pop_front();
    std::vector<std::uint32_t> row;
    row.reserve(d.alphabet.size());
    for (char a : d.alphabet)
      row.push_back(add_state(derive(a, d.states[i], reg, pool, &cache)));
    if (d.delta.size() <= i) d.delta.resize(i + 1);
    d.delta[i] = std::move(row);
  }
  d.finals.resize(d.states.size());
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    Nullability r = nullable(d.states[i], reg, pool, &cache);
    if (!r.decided())
      throw capability_error(r.blocking_op,
                             "cannot compile: empty-word test for '" +
                                 r.blocking_op + "' is undecided");
    d.finals[i] = r.yes();
  }
  return d;
}

bool run(const Dfa& d, std::string_view w) {
  std::uint32_t s = d.start;
  for (char c : w) s = d.delta[s][d.symbol_index(c)];
  return d.finals[s];
}

EquivResult equiv(ExprId e1, ExprId e2, const OperatorRegistry& reg,
                  ExprPool& pool) {
  for (ExprId e : {e1, e2}) {
    std::string offending;
    if (!is_compile_eligible(e, reg, pool, &offending))
      throw capability_error(offending,
                             "cannot decide equivalence: operator '" +
                                 offending + "' is not usable in automaton "
                                             "construction");
  }
  HookCache cache;
  auto null_of = [&](ExprId e) {
    Nullability r = nullable(e, reg, pool, &cache);
    if (!r.decided())
      throw capability_error(r.blocking_op,
                             "cannot decide equivalence: empty-word test for '" +
                                 r.blocking_op + "' is undecided");
    return r.yes();
  };
  struct Item {
    ExprId a, b;
    std::int64_t parent;
    char sym;
  };
  std::vector<Item> items{{e1, e2, -1, 0}};
  std::set<std::pair<ExprId, ExprId>> seen{{e1, e2}};
  for (std::size_t qi = 0; qi < items.size(); ++qi) {
    Item it = items[qi];
    bool n1 = null_of(it.a), n2 = null_of(it.b);
    if (n1 != n2) {
      std::string w;
      for (std::int64_t j = static_cast<std::int64_t>(qi); j > 0;
           j = items[static_cast<std::size_t>(j)].parent)
        w += items[static_cast<std::size_t>(j)].sym;
      std::reverse(w.begin(), w.end());
      return {false, w, n1 ? Side::First : Side::Second};
    }
    for (char a : reg.alphabet()) {
      ExprId da = derive(a, it.a, reg, pool, &cache);
      ExprId db = derive(a, it.b, reg, pool, &cache);
      if (seen.emplace(da, db).second)
        items.push_back({da, db, static_cast<std::int64_t>(qi), a});
    }
  }
  return {};
}

std::vector<std::string> enumerate_words(ExprId e, const OperatorRegistry& reg,
                                         ExprPool& pool, std::size_t max_len) {
  std::vector<std::string> out;
  if (is_compile_eligible(e, reg, pool)) {
    Dfa d = compile(e, reg, pool);
    // distance from each state to the nearest accepting one
    std::vector<std::size_t> dist(d.states.size(), SIZE_MAX);
    std::deque<std::uint32_t> bfs;
    for (std::uint32_t i = 0; i < d.states.size(); ++i)
      if (d.finals[i]) {
        dist[i] = 0;
        bfs.push_back(i);
      }
    std::vector<std::vector<std::uint32_t>> rev(d.states.size());
    for (std::uint32_t i = 0; i < d.delta.size(); ++i)
      for (std::uint32_t t : d.delta[i]) rev[t].push_back(i);
    while (!bfs.empty()) {
      std::uint32_t s = bfs.front();
      bfs.pop_front();
      for (std::uint32_t p : rev[s])
        if (dist[p] == SIZE_MAX) {
          dist[p] = dist[s] + 1;
          bfs.push_back(p);
        }
    }
    std::string w;
    auto walk = [&](auto&& self, std::uint32_t s) -> void {
      if (dist[s] == SIZE_MAX || w.size() + dist[s] > max_len) return;
      if (d.finals[s]) out.push_back(w);
      if (w.size() == max_len) return;
      for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
        w += d.alphabet[ai];
        self(self, d.delta[s][ai]);
        w.pop_back();
      }
    };
    walk(walk, d.start);
  } else {
    HookCache cache;
    std::string w;
    auto walk = [&](auto&& self, ExprId s) -> void {
      Nullability r = nullable(s, reg, pool, &cache);
      if (!r.decided())
        throw capability_error(r.blocking_op,
                               "cannot enumerate: empty-word test for '" +
                                   r.blocking_op + "' is undecided");
      if (r.yes()) out.push_back(w);
      if (w.size() == max_len) return;
      for (char a : reg.alphabet()) {
        w += a;
        self(self, derive(a, s, reg, pool, &cache));
        w.pop_back();
      }
    };
    walk(walk, e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const std::string& x, const std::string& y) {
                     return x.size() < y.size();
                   });
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const Dfa& d, const ExprPool& pool) {
  std::string out = "digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  out += "  start [shape=none, label=\"\"];\n";
  out += "  start -> s" + std::to_string(d.start) + ";\n";
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    out += "  s" + std::to_string(i);
    out += d.finals[i] ? " [shape=doublecircle, label=\"" : " [label=\"";
    out += dot_escape(pretty(d.states[i], pool)) + "\"];\n";
  }
  for (std::size_t i = 0; i < d.delta.size(); ++i) {
    // merge parallel edges, keeping symbol order inside the label and
    // ordering edge lines by first occurrence
    std::vector<std::uint32_t> targets;
    std::map<std::uint32_t, std::string> labels;
    for (std::size_t ai = 0; ai < d.alphabet.size(); ++ai) {
      std::uint32_t t = d.delta[i][ai];
      auto [it, fresh] = labels.try_emplace(t, std::string(1, d.alphabet[ai]));
      if (fresh)
        targets.push_back(t);
      else
        it->second += std::string(",") + d.alphabet[ai];
    }
    for (std::uint32_t t : targets)
      out += "  s" + std::to_string(i) + " -> s" + std::to_string(t) +
             " [label=\"" + labels[t] + "\"];\n";
  }
  out += "}\n";
  return out;
}

Dfa minimize(const Dfa& d) {
  std::size_t n = d.states.size();
  std::size_t k = d.alphabet.size();
  std::vector<std::vector<std::vector<std::uint32_t>>> rev(
      n, std::vector<std::vector<std::uint32_t>>(k));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a) rev[d.delta[i][a]][a].push_back(i);

  std::vector<std::uint32_t> cls(n, 0);
  std::vector<std::set<std::uint32_t>> parts;
  {
    std::set<std::uint32_t> fin, nonfin;
    for (std::uint32_t i = 0; i < n; ++i)
      (d.finals[i] ? fin : nonfin).insert(i);
    if (!fin.empty()) parts.push_back(std::move(fin));
    if (!nonfin.empty()) parts.push_back(std::move(nonfin));
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (std::uint32_t s : parts[p]) cls[s] = static_cast<std::uint32_t>(p);
  }
  std::deque<std::pair<std::uint32_t, std::size_t>> work;
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t a = 0; a < k; ++a)
      work.emplace_back(static_cast<std::uint32_t>(p), a);

  while (!work.empty()) {
    auto [p, a] = work.front();
    work.pop_front();
    std::set<std::uint32_t> pred;
    for (std::uint32_t s : parts[p])
      for (std::uint32_t q : rev[s][a]) pred.insert(q);
    std::map<std::uint32_t, std::vector<std::uint32_t>> split;
    for (std::uint32_t q : pred) split[cls[q]].push_back(q);
    for (auto& [c, members] : split) {
      if (members.size() == parts[c].size()) continue;
      auto nc = static_cast<std::uint32_t>(parts.size());
      parts.emplace_back(members.begin(), members.end());
      for (std::uint32_t m : members) {
        parts[c].erase(m);
        cls[m] = nc;
      }
      for (std::size_t sa = 0; sa < k; ++sa) work.emplace_back(nc, sa);
    }
  }

  // renumber classes by lowest member so output order is stable
  std::vector<std::uint32_t> repr(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) repr[p] = *parts[p].begin();
  std::vector<std::uint32_t> order(parts.size());
  for (std::uint32_t p = 0; p < parts.size(); ++p) order[p] = p;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t x, std::uint32_t y) { return repr[x] < repr[y]; });
  std::vector<std::uint32_t> newidx(parts.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) newidx[order[i]] = i;

  Dfa m;
  m.alphabet = d.alphabet;
  m.states.resize(parts.size());
  m.finals.resize(parts.size());
  m.delta.assign(parts.size(), std::vector<std::uint32_t>(k));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    std::uint32_t ni = newidx[p];
    std::uint32_t r = repr[p];
    m.states[ni] = d.states[r];
    m.finals[ni] = d.finals[r];
    for (std::size_t a = 0; a < k; ++a)
      m.delta[ni][a] = newidx[cls[d.delta[r][a]]];
  }
  m.start = newidx[cls[d.start]];
  return m;
}

bool dfa_nonempty(const Dfa& d) {
  std::vector<bool> seen(d.states.size());
  std::deque<std::uint32_t> q{d.start};
  seen[d.start] = true;
  while (!q.empty()) {
    std::uint32_t s = q.front();
    q.pop_front();
    if (d.finals[s]) return true;
    for (std::uint32_t t : d.delta[s])
      if (!seen[t]) {
        seen[t] = true;
        q.push_back(t);
      }
  }
  return false;
}

bool dfa_intersection_nonempty(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet)
    throw std::invalid_argument("intersection: alphabets differ");
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen{{a.start, b.start}};
  std::deque<std::pair<std::uint32_t, std::uint32_t>> q{{a.start, b.start}};
  while (!q.empty()) {
    auto [x, y] = q.front();
    q.pop_front();
    if (a.finals[x] && b.finals[y]) return true;
    for (std::size_t ai = 0; ai < a.alphabet.size(); ++ai) {
      auto nx = a.delta[x][ai];
      auto ny = b.delta[y][ai];
      if (seen.emplace(nx, ny).second) q.emplace_back(nx, ny);
    }
  }
  return false;
}

std::optional<std::size_t> dfa_shortest_accepted(const Dfa& d) {
  std::vector<std::size_t> dist(d.states.size(), SIZE_MAX);
  std::deque<std::uint32_t> q{d.start};
  dist[d.start] = 0;
  while (!q.empty()) {
    std::uint32_t s = q.front();
    q.pop_front();
    if (d.finals[s]) return dist[s];
    for (std::uint32_t t : d.delta[s])
      if (dist[t] == SIZE_MAX) {
        dist[t] = dist[s] + 1;
        q.push_back(t);
      }
  }
  return std::nullopt;
}

}  // namespace rederiv
