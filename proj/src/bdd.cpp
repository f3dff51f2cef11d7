#include "ltlf2dfa/bdd.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>
#include <sstream>
#include <stdexcept>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

namespace {
constexpr std::size_t kCacheSize = std::size_t{1} << 18;
constexpr std::size_t kMaxNodes = std::size_t{1} << 24;

std::size_t mix(BddRef f, BddRef g, BddRef h) {
  std::uint64_t x = f * 0x9e3779b97f4a7c15ULL;
  x ^= (g + 0x632be59bd9b4e019ULL) * 0xbf58476d1ce4e5b9ULL;
  x ^= (h + 0x85ebca6b) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return static_cast<std::size_t>(x);
}
}  // namespace

BddManager::BddManager(unsigned num_vars, std::size_t node_cap)
    : num_vars_(num_vars), node_cap_(std::min(node_cap, kMaxNodes)), cache_(kCacheSize) {
  if (num_vars >= 0xffff) throw std::invalid_argument("too many BDD variables");
  nodes_.push_back({num_vars, kFalse, kFalse});
  nodes_.push_back({num_vars, kTrue, kTrue});
}

BddRef BddManager::var(unsigned v) { return make(v, kFalse, kTrue); }
BddRef BddManager::nvar(unsigned v) { return make(v, kTrue, kFalse); }

BddRef BddManager::make(unsigned v, BddRef lo, BddRef hi) {
  if (lo == hi) return lo;
  if (v >= num_vars_) throw std::out_of_range("BDD variable out of range");
  const std::uint64_t k = key(v, lo, hi);
  auto it = unique_.find(k);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= node_cap_)
    throw BudgetExceeded("BDD store exceeds " + std::to_string(node_cap_) + " nodes");
  const BddRef id = static_cast<BddRef>(nodes_.size());
  nodes_.push_back({v, lo, hi});
  unique_.emplace(k, id);
  return id;
}

BddRef BddManager::ite(BddRef f, BddRef g, BddRef h) {
  if (f == kTrue) return g;
  if (f == kFalse) return h;
  if (g == h) return g;
  if (g == kTrue && h == kFalse) return f;
  if (g == f) g = kTrue;
  if (h == f) h = kFalse;
  if (g == h) return g;

  CacheEntry& e = cache_[mix(f, g, h) & (kCacheSize - 1)];
  if (e.generation == generation_ && e.f == f && e.g == g && e.h == h) return e.result;

  const unsigned v = std::min({top(f), top(g), top(h)});
  const BddRef t = ite(cofactor(f, v, true), cofactor(g, v, true), cofactor(h, v, true));
  const BddRef el = ite(cofactor(f, v, false), cofactor(g, v, false), cofactor(h, v, false));
  const BddRef r = make(v, el, t);

  CacheEntry& slot = cache_[mix(f, g, h) & (kCacheSize - 1)];
  slot = {f, g, h, r, generation_};
  return r;
}

BddRef BddManager::restrict(BddRef f, unsigned v, bool value) {
  std::unordered_map<BddRef, BddRef> memo;
  std::function<BddRef(BddRef)> rec = [&](BddRef n) -> BddRef {
    if (is_terminal(n) || top(n) > v) return n;
    if (top(n) == v) return value ? high(n) : low(n);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    BddRef r = make(top(n), rec(low(n)), rec(high(n)));
    memo.emplace(n, r);
    return r;
  };
  return rec(f);
}

BddRef BddManager::compose(BddRef f, unsigned v, BddRef g) {
  return ite(g, restrict(f, v, true), restrict(f, v, false));
}

BddRef BddManager::vector_compose(BddRef f, const std::vector<BddRef>& substitution) {
  std::unordered_map<BddRef, BddRef> memo;
  std::function<BddRef(BddRef)> rec = [&](BddRef n) -> BddRef {
    if (is_terminal(n)) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const unsigned v = top(n);
    BddRef sel = v < substitution.size() && substitution[v] != kNoSubstitution ? substitution[v]
                                                                                : var(v);
    BddRef r = ite(sel, rec(high(n)), rec(low(n)));
    memo.emplace(n, r);
    return r;
  };
  return rec(f);
}

BddRef BddManager::exists(BddRef f, const std::vector<bool>& vars) {
  unsigned max_q = 0;
  bool any = false;
  for (unsigned v = 0; v < vars.size(); ++v)
    if (vars[v]) max_q = v, any = true;
  if (!any) return f;
  std::unordered_map<BddRef, BddRef> memo;
  std::function<BddRef(BddRef)> rec = [&](BddRef n) -> BddRef {
    if (is_terminal(n) || top(n) > max_q) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    const unsigned v = top(n);
    BddRef lo = rec(low(n));
    BddRef r;
    if (vars[v]) {
      r = lo == kTrue ? kTrue : disj(lo, rec(high(n)));
    } else {
      r = make(v, lo, rec(high(n)));
    }
    memo.emplace(n, r);
    return r;
  };
  return rec(f);
}

BddRef BddManager::and_exists(BddRef f, BddRef g, const std::vector<bool>& vars) {
  struct PairHash {
    std::size_t operator()(const std::pair<BddRef, BddRef>& p) const noexcept {
      return mix(p.first, p.second, 0);
    }
  };
  std::unordered_map<std::pair<BddRef, BddRef>, BddRef, PairHash> memo;
  auto quantified = [&](unsigned v) { return v < vars.size() && vars[v]; };
  std::function<BddRef(BddRef, BddRef)> rec = [&](BddRef a, BddRef b) -> BddRef {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue && b == kTrue) return kTrue;
    if (a == kTrue) return exists(b, vars);
    if (b == kTrue || a == b) return exists(a, vars);
    if (a > b) std::swap(a, b);
    if (auto it = memo.find({a, b}); it != memo.end()) return it->second;
    const unsigned v = std::min(top(a), top(b));
    BddRef lo = rec(cofactor(a, v, false), cofactor(b, v, false));
    BddRef r;
    if (quantified(v)) {
      r = lo == kTrue ? kTrue : disj(lo, rec(cofactor(a, v, true), cofactor(b, v, true)));
    } else {
      r = make(v, lo, rec(cofactor(a, v, true), cofactor(b, v, true)));
    }
    memo.emplace(std::make_pair(a, b), r);
    return r;
  };
  return rec(f, g);
}

BddRef BddManager::rename_monotone(BddRef f, const std::vector<unsigned>& map) {
  std::unordered_map<BddRef, BddRef> memo;
  std::function<BddRef(BddRef)> rec = [&](BddRef n) -> BddRef {
    if (is_terminal(n)) return n;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    BddRef lo = rec(low(n)), hi = rec(high(n));
    const unsigned v = map.at(top(n));
    if (top(lo) <= v || top(hi) <= v)
      throw std::logic_error("rename_monotone: map is not order preserving");
    BddRef r = make(v, lo, hi);
    memo.emplace(n, r);
    return r;
  };
  return rec(f);
}

bool BddManager::eval(BddRef f, const std::vector<bool>& assignment) const {
  while (!is_terminal(f)) f = assignment[top(f)] ? high(f) : low(f);
  return f == kTrue;
}

std::vector<unsigned> BddManager::support(BddRef f) const {
  std::set<unsigned> vars;
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<BddRef> stack{f};
  while (!stack.empty()) {
    BddRef n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    vars.insert(top(n));
    stack.push_back(low(n));
    stack.push_back(high(n));
  }
  return {vars.begin(), vars.end()};
}

std::size_t BddManager::count_nodes(const std::vector<BddRef>& roots) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<BddRef> stack(roots.begin(), roots.end());
  std::size_t count = 0;
  while (!stack.empty()) {
    BddRef n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    ++count;
    stack.push_back(low(n));
    stack.push_back(high(n));
  }
  return count;
}

bool BddManager::check_invariants(BddRef f) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::set<std::tuple<unsigned, BddRef, BddRef>> triples;
  std::vector<BddRef> stack{f};
  while (!stack.empty()) {
    BddRef n = stack.back();
    stack.pop_back();
    if (n >= nodes_.size()) return false;
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    const Node& node = nodes_[n];
    if (node.lo == node.hi) return false;
    if (node.var >= num_vars_) return false;
    if (top(node.lo) <= node.var || top(node.hi) <= node.var) return false;
    if (!triples.emplace(node.var, node.lo, node.hi).second) return false;
    stack.push_back(node.lo);
    stack.push_back(node.hi);
  }
  return true;
}

std::vector<BddRef> BddManager::collect_garbage(const std::vector<BddRef>& keep) {
  std::vector<Node> old;
  old.swap(nodes_);
  unique_.clear();
  nodes_.push_back(old[kFalse]);
  nodes_.push_back(old[kTrue]);
  ++generation_;

  std::unordered_map<BddRef, BddRef> moved{{kFalse, kFalse}, {kTrue, kTrue}};
  std::function<BddRef(BddRef)> copy = [&](BddRef n) -> BddRef {
    if (auto it = moved.find(n); it != moved.end()) return it->second;
    BddRef lo = copy(old[n].lo), hi = copy(old[n].hi);
    BddRef r = make(old[n].var, lo, hi);
    moved.emplace(n, r);
    return r;
  };
  std::vector<BddRef> out;
  out.reserve(keep.size());
  for (BddRef r : keep) out.push_back(copy(r));
  return out;
}

std::string BddManager::to_dot(const std::vector<BddRef>& roots,
                               const std::vector<std::string>& names) const {
  std::ostringstream os;
  os << "digraph bdd {\n  0 [shape=box,label=\"0\"];\n  1 [shape=box,label=\"1\"];\n";
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<BddRef> order;
  std::vector<BddRef> stack(roots.rbegin(), roots.rend());
  while (!stack.empty()) {
    BddRef n = stack.back();
    stack.pop_back();
    if (is_terminal(n) || seen[n]) continue;
    seen[n] = true;
    order.push_back(n);
    stack.push_back(high(n));
    stack.push_back(low(n));
  }
  for (BddRef n : order) {
    const unsigned v = top(n);
    os << "  " << n << " [label=\"" << (v < names.size() ? names[v] : std::to_string(v)) << "\"];\n";
    os << "  " << n << " -> " << low(n) << " [style=dashed];\n";
    os << "  " << n << " -> " << high(n) << ";\n";
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    os << "  r" << i << " [shape=plaintext];\n  r" << i << " -> " << roots[i] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ltlf
