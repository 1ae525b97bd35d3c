#include "rederiv/transducer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "rederiv/derivation.hpp"

namespace rederiv {

namespace {

void check_fst_state(const OperatorDef& def) {
  if (def.arity != 1)
    throw capability_error(def.name, "transducer: " + def.name +
                                         " is not a unary operator");
  if (def.rule.kind != DerivativeRule::Kind::Linear)
    throw capability_error(
        def.name, "transducer: " + def.name + " has no linear derivative rule");
  if (!def.eps.is_identity())
    throw capability_error(def.name,
                           "transducer: " + def.name +
                               " does not preserve the empty word exactly");
}

std::string dot_quote(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Transducer build_fst(const OperatorDef& op, const OperatorRegistry& reg) {
  Transducer fst;
  std::map<std::string, std::size_t> index;
  std::deque<std::size_t> todo;

  auto state_of = [&](const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const OperatorDef* def = reg.find(name);
    if (!def)
      throw capability_error(name, "transducer: unknown operator " + name);
    check_fst_state(*def);
    std::size_t id = fst.states.size();
    fst.states.push_back(name);
    index.emplace(name, id);
    todo.push_back(id);
    return id;
  };

  fst.initial = state_of(op.name);
  while (!todo.empty()) {
    std::size_t from = todo.front();
    todo.pop_front();
    const OperatorDef& def = reg.at(fst.states[from]);
    for (char a : reg.alphabet()) {
      for (const LinearTerm& t : def.rule.terms(a)) {
        std::size_t to = state_of(t.target);
        std::string input = t.args.empty() ? std::string() : t.args[0].word;
        fst.transitions.push_back(
            {from, std::move(input), std::string(1, a) + t.prefix, to});
      }
    }
  }
  return fst;
}

TransduceResult transduce(const Transducer& fst, std::string_view input,
                          std::size_t max_steps, std::size_t max_out) {
  TransduceResult res;
  std::set<std::string> found;
  using Config = std::tuple<std::size_t, std::size_t, std::string>;
  std::set<Config> seen;
  std::deque<Config> queue;
  queue.push_back({fst.initial, 0, ""});
  seen.insert(queue.front());
  std::size_t steps = 0;

  while (!queue.empty()) {
    if (++steps > max_steps) {
      res.possibly_incomplete = true;
      break;
    }
    auto [state, pos, out] = queue.front();
    queue.pop_front();
    if (pos == input.size()) found.insert(out);
    for (const FstTransition& t : fst.transitions) {
      if (t.from != state) continue;
      if (input.compare(pos, t.input.size(), t.input) != 0) continue;
      if (out.size() + t.output.size() > max_out) {
        res.possibly_incomplete = true;
        continue;
      }
      Config next{t.to, pos + t.input.size(), out + t.output};
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }

  res.words.assign(found.begin(), found.end());
  std::stable_sort(res.words.begin(), res.words.end(),
                   [](const std::string& a, const std::string& b) {
                     return a.size() != b.size() ? a.size() < b.size() : a < b;
                   });
  return res;
}

TransduceResult transduce(const Transducer& fst, std::string_view input) {
  return transduce(fst, input, 200000, input.size() + 8);
}

std::string fst_to_dot(const Transducer& fst) {
  std::string out = "digraph fst {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=doublecircle];\n";
  out += "  start [shape=none, label=\"\"];\n";
  out += "  start -> s" + std::to_string(fst.initial) + ";\n";
  for (std::size_t i = 0; i < fst.states.size(); ++i)
    out += "  s" + std::to_string(i) + " [label=\"" + dot_quote(fst.states[i]) +
           "\"];\n";
  for (const FstTransition& t : fst.transitions) {
    std::string label = (t.input.empty() ? "@e" : t.input) + "/" + t.output;
    out += "  s" + std::to_string(t.from) + " -> s" + std::to_string(t.to) +
           " [label=\"" + dot_quote(label) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace rederiv
