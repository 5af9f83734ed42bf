#pragma once

// Equality certificates over a union log.
//
// A proof term is a tree of four constructors:
//   assm i       concludes log[i]
//   refl x       concludes (x, x)
//   sym p        concludes (y, x) when p concludes (x, y)
//   trans p q    concludes (x, z) when p concludes (x, y) and q (y, z)
//
// Proofs produced by explain are deep (linear in the element count for chain
// shaped workloads), so terms live in a flat arena and every traversal here
// is iterative.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ufe/uf_core.hpp"

namespace ufe {

using UnionIdx = std::size_t;
using UnionPair = std::pair<Elem, Elem>;
using UnionLog = std::vector<UnionPair>;

enum class ProofKind : std::uint8_t { assm, refl, sym, trans };

struct ProofNode {
  ProofKind kind;
  // assm: log index; refl: element; sym: child; trans: left child.
  std::size_t first;
  // trans: right child; unused otherwise.
  std::size_t second;

  friend bool operator==(const ProofNode&, const ProofNode&) = default;
};

/// A proof term stored as an arena in which children precede their parents.
/// The root is the most recently added node.
class EqProof {
 public:
  using node_id = std::size_t;

  EqProof() = default;

  node_id add_assm(UnionIdx i) { return push({ProofKind::assm, i, 0}); }
  node_id add_refl(Elem x) { return push({ProofKind::refl, x, 0}); }
  node_id add_sym(node_id p) {
    check_child(p);
    return push({ProofKind::sym, p, 0});
  }
  node_id add_trans(node_id p, node_id q) {
    check_child(p);
    check_child(q);
    return push({ProofKind::trans, p, q});
  }
  /// trans (trans p mid) q, the left-associated three-link chain.
  node_id add_chain(node_id p, node_id mid, node_id q) {
    return add_trans(add_trans(p, mid), q);
  }

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t arena_size() const noexcept { return nodes_.size(); }
  node_id root() const {
    if (nodes_.empty()) throw std::logic_error("empty proof has no root");
    return nodes_.size() - 1;
  }
  const ProofNode& node(node_id id) const { return nodes_.at(id); }

  /// Appends all of other's nodes; returns the id of other's root here.
  node_id splice(const EqProof& other) {
    const std::size_t offset = nodes_.size();
    for (ProofNode n : other.nodes_) {
      if (n.kind == ProofKind::sym) n.first += offset;
      if (n.kind == ProofKind::trans) {
        n.first += offset;
        n.second += offset;
      }
      nodes_.push_back(n);
    }
    return other.root() + offset;
  }

  /// Structural tree equality, independent of arena layout.
  friend bool operator==(const EqProof& lhs, const EqProof& rhs) {
    if (lhs.empty() || rhs.empty()) return lhs.empty() && rhs.empty();
    std::vector<std::pair<node_id, node_id>> stack{{lhs.root(), rhs.root()}};
    while (!stack.empty()) {
      const auto [i, j] = stack.back();
      stack.pop_back();
      const ProofNode& a = lhs.nodes_[i];
      const ProofNode& b = rhs.nodes_[j];
      if (a.kind != b.kind) return false;
      switch (a.kind) {
        case ProofKind::assm:
        case ProofKind::refl:
          if (a.first != b.first) return false;
          break;
        case ProofKind::sym:
          stack.emplace_back(a.first, b.first);
          break;
        case ProofKind::trans:
          stack.emplace_back(a.second, b.second);
          stack.emplace_back(a.first, b.first);
          break;
      }
    }
    return true;
  }

 private:
  node_id push(ProofNode n) {
    nodes_.push_back(n);
    return nodes_.size() - 1;
  }
  void check_child(node_id id) const {
    if (id >= nodes_.size()) {
      throw std::invalid_argument("proof child must already exist");
    }
  }

  std::vector<ProofNode> nodes_;
};

// Whole-term constructors, mostly for writing expected values.
inline EqProof assm(UnionIdx i) {
  EqProof p;
  p.add_assm(i);
  return p;
}
inline EqProof refl(Elem x) {
  EqProof p;
  p.add_refl(x);
  return p;
}
inline EqProof sym(const EqProof& inner) {
  EqProof p;
  p.add_sym(p.splice(inner));
  return p;
}
inline EqProof trans(const EqProof& lhs, const EqProof& rhs) {
  EqProof p;
  const auto l = p.splice(lhs);
  const auto r = p.splice(rhs);
  p.add_trans(l, r);
  return p;
}

struct Conclusion {
  Elem lhs;
  Elem rhs;
  friend bool operator==(const Conclusion&, const Conclusion&) = default;
};

enum class Rejection { assm_out_of_range, trans_mismatch };

inline const char* to_string(Rejection r) {
  switch (r) {
    case Rejection::assm_out_of_range:
      return "assumption index out of range";
    case Rejection::trans_mismatch:
      return "transitivity midpoint mismatch";
  }
  return "unknown";
}

class proof_rejected : public std::runtime_error {
 public:
  proof_rejected(Rejection reason, EqProof::node_id at)
      : std::runtime_error(std::string(to_string(reason)) + " at node " +
                           std::to_string(at)),
        reason_(reason),
        node_(at) {}

  Rejection reason() const noexcept { return reason_; }
  EqProof::node_id node() const noexcept { return node_; }

 private:
  Rejection reason_;
  EqProof::node_id node_;
};

namespace detail {

/// Marks the nodes reachable from the root.
inline std::vector<bool> reachable_nodes(const EqProof& p) {
  std::vector<bool> seen(p.arena_size(), false);
  std::vector<EqProof::node_id> stack{p.root()};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = true;
    const ProofNode& n = p.node(id);
    if (n.kind == ProofKind::sym) stack.push_back(n.first);
    if (n.kind == ProofKind::trans) {
      stack.push_back(n.first);
      stack.push_back(n.second);
    }
  }
  return seen;
}

}  // namespace detail

/// Derives the conclusion of p under the assumptions us, or throws
/// proof_rejected naming the first failing node.
inline Conclusion check(std::span<const UnionPair> us, const EqProof& p) {
  if (p.empty()) throw std::invalid_argument("cannot check an empty proof");
  const auto live = detail::reachable_nodes(p);
  std::vector<Conclusion> concl(p.arena_size());
  // Children have smaller ids than parents, so one forward pass suffices.
  for (EqProof::node_id id = 0; id < p.arena_size(); ++id) {
    if (!live[id]) continue;
    const ProofNode& n = p.node(id);
    switch (n.kind) {
      case ProofKind::assm:
        if (n.first >= us.size()) {
          throw proof_rejected(Rejection::assm_out_of_range, id);
        }
        concl[id] = {us[n.first].first, us[n.first].second};
        break;
      case ProofKind::refl:
        concl[id] = {n.first, n.first};
        break;
      case ProofKind::sym:
        concl[id] = {concl[n.first].rhs, concl[n.first].lhs};
        break;
      case ProofKind::trans: {
        const Conclusion& l = concl[n.first];
        const Conclusion& r = concl[n.second];
        if (l.rhs != r.lhs) throw proof_rejected(Rejection::trans_mismatch, id);
        concl[id] = {l.lhs, r.rhs};
        break;
      }
    }
  }
  return concl[p.root()];
}

struct ProofStats {
  std::uint64_t assm_count = 0;
  std::uint64_t node_count = 0;
  std::uint64_t depth = 0;
  friend bool operator==(const ProofStats&, const ProofStats&) = default;
};

inline ProofStats proof_stats(const EqProof& p) {
  if (p.empty()) return {};
  const auto live = detail::reachable_nodes(p);
  std::vector<ProofStats> at(p.arena_size());
  for (EqProof::node_id id = 0; id < p.arena_size(); ++id) {
    if (!live[id]) continue;
    const ProofNode& n = p.node(id);
    ProofStats s{0, 1, 1};
    switch (n.kind) {
      case ProofKind::assm:
        s.assm_count = 1;
        break;
      case ProofKind::refl:
        break;
      case ProofKind::sym:
        s.assm_count = at[n.first].assm_count;
        s.node_count += at[n.first].node_count;
        s.depth += at[n.first].depth;
        break;
      case ProofKind::trans:
        s.assm_count = at[n.first].assm_count + at[n.second].assm_count;
        s.node_count += at[n.first].node_count + at[n.second].node_count;
        s.depth += std::max(at[n.first].depth, at[n.second].depth);
        break;
    }
    at[id] = s;
  }
  return at[p.root()];
}

// ---------------------------------------------------------------------------
// Brute-force equivalence closure.

/// Finite relation over 0..n-1, stored as an explicit pair set.
struct Relation {
  std::size_t n = 0;
  std::set<std::pair<Elem, Elem>> pairs;

  bool contains(Elem x, Elem y) const { return pairs.count({x, y}) != 0; }
  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Reflexive-transitive closure of the symmetric closure of the log, over
/// 0..n-1, by graph search on the undirected union graph.
inline Relation equiv_closure(const UnionLog& us, std::size_t n) {
  std::vector<std::vector<Elem>> adj(n);
  for (const auto& [a, b] : us) {
    if (a >= n) throw range_error(a, n);
    if (b >= n) throw range_error(b, n);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  Relation r{n, {}};
  for (Elem x = 0; x < n; ++x) {
    std::vector<bool> seen(n, false);
    std::vector<Elem> todo{x};
    seen[x] = true;
    while (!todo.empty()) {
      const Elem v = todo.back();
      todo.pop_back();
      r.pairs.emplace(x, v);
      for (Elem w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          todo.push_back(w);
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text format: fully parenthesized prefix terms,
//   (assm I) | (refl X) | (sym P) | (trans P Q)

inline void write_proof(std::ostream& os, const EqProof& p) {
  // Each stack entry is either a node to print or a pending ")".
  constexpr std::size_t close = static_cast<std::size_t>(-1);
  std::vector<std::size_t> stack{p.root()};
  bool need_space = false;
  while (!stack.empty()) {
    const auto item = stack.back();
    stack.pop_back();
    if (item == close) {
      os << ')';
      need_space = true;
      continue;
    }
    if (need_space) os << ' ';
    const ProofNode& n = p.node(item);
    switch (n.kind) {
      case ProofKind::assm:
        os << "(assm " << n.first << ')';
        need_space = true;
        break;
      case ProofKind::refl:
        os << "(refl " << n.first << ')';
        need_space = true;
        break;
      case ProofKind::sym:
        os << "(sym";
        stack.push_back(close);
        stack.push_back(n.first);
        need_space = true;
        break;
      case ProofKind::trans:
        os << "(trans";
        stack.push_back(close);
        stack.push_back(n.second);
        stack.push_back(n.first);
        need_space = true;
        break;
    }
  }
}

inline std::string to_text(const EqProof& p) {
  std::ostringstream os;
  write_proof(os, p);
  return os.str();
}

class proof_format_error : public std::runtime_error {
 public:
  proof_format_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses one term; trailing whitespace is allowed, anything else is not.
inline EqProof parse_proof(std::string_view text) {
  struct Frame {
    ProofKind kind;
    std::vector<EqProof::node_id> children;
  };
  EqProof out;
  std::vector<Frame> frames;
  std::optional<EqProof::node_id> done;
  std::size_t pos = 0;

  const auto skip_ws = [&] {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r')) {
      ++pos;
    }
  };
  const auto read_word = [&] {
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= 'a' && text[pos] <= 'z') ++pos;
    return text.substr(start, pos - start);
  };
  const auto read_number = [&]() -> std::size_t {
    const std::size_t start = pos;
    std::size_t v = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      const std::size_t digit = static_cast<std::size_t>(text[pos] - '0');
      if (v > (static_cast<std::size_t>(-1) - digit) / 10) {
        throw proof_format_error("integer overflow", start);
      }
      v = v * 10 + digit;
      ++pos;
    }
    if (pos == start) throw proof_format_error("expected integer", start);
    return v;
  };
  const auto finish = [&](EqProof::node_id id) {
    if (frames.empty()) {
      done = id;
    } else {
      frames.back().children.push_back(id);
    }
  };

  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    if (done) throw proof_format_error("trailing input", pos);
    if (text[pos] == '(') {
      ++pos;
      skip_ws();
      const std::size_t word_at = pos;
      const auto word = read_word();
      if (word == "assm" || word == "refl") {
        skip_ws();
        const std::size_t v = read_number();
        skip_ws();
        if (pos >= text.size() || text[pos] != ')') {
          throw proof_format_error("expected ')'", pos);
        }
        ++pos;
        finish(word == "assm" ? out.add_assm(v) : out.add_refl(v));
      } else if (word == "sym") {
        frames.push_back({ProofKind::sym, {}});
      } else if (word == "trans") {
        frames.push_back({ProofKind::trans, {}});
      } else {
        throw proof_format_error("unknown constructor", word_at);
      }
    } else if (text[pos] == ')') {
      if (frames.empty()) throw proof_format_error("unbalanced ')'", pos);
      Frame f = std::move(frames.back());
      frames.pop_back();
      const std::size_t want = f.kind == ProofKind::sym ? 1 : 2;
      if (f.children.size() != want) {
        throw proof_format_error("wrong number of subterms", pos);
      }
      ++pos;
      finish(f.kind == ProofKind::sym
                 ? out.add_sym(f.children[0])
                 : out.add_trans(f.children[0], f.children[1]));
    } else {
      throw proof_format_error("unexpected character", pos);
    }
    if (!frames.empty() && frames.back().children.size() >
                               (frames.back().kind == ProofKind::sym ? 1u : 2u)) {
      throw proof_format_error("too many subterms", pos);
    }
  }
  if (!frames.empty() || !done) {
    throw proof_format_error("unexpected end of input", pos);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const EqProof& p) {
  if (p.empty()) return os << "<empty proof>";
  write_proof(os, p);
  return os;
}

}  // namespace ufe
