#pragma once

/**
 * Decorated affine Dynkin diagrams, twisted local indices, facets, and
 * diagram folding.
 *
 * An AffineDiagram is a finite graph with bond multiplicities 1..4 on edges,
 * an arrow on every edge of bond >= 2 (pointing to the short-root side; for
 * the bond-4 "infinite" edge of the two rank-one affine diagrams the arrow
 * direction is a fixed display convention with no mathematical content, and
 * every structural comparison in this library ignores arrows), a set of
 * special vertex marks, and node labels.
 *
 * A LocalIndex is an AffineDiagram together with a permutation describing the
 * unramified Frobenius action (a diagram automorphism).  Folding a local
 * index by that action yields the relative affine diagram; the supported
 * orbit configurations are exactly the table-driven patterns occurring in the
 * built-in structure catalog, and anything else raises an
 * unsupported-folding error rather than guessing.
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace unillc {

struct DiagramEdge {
  int a = 0, b = 0;   // endpoints, normalized a < b
  int bond = 1;       // 1..4; 4 is the infinite bond (Coxeter m = infinity)
  int arrow_to = -1;  // -1 none, else a or b

  friend bool operator==(const DiagramEdge&, const DiagramEdge&) = default;
  friend auto operator<=>(const DiagramEdge& x, const DiagramEdge& y) {
    if (auto c = x.a <=> y.a; c != 0) return c;
    return x.b <=> y.b;
  }
};

class AffineDiagram {
 public:
  int num_nodes = 0;
  std::vector<std::string> labels;
  std::vector<bool> special;
  std::vector<DiagramEdge> edges;

  AffineDiagram() = default;

  AffineDiagram(int n, std::vector<std::string> node_labels,
                std::vector<int> special_nodes, std::vector<DiagramEdge> es)
      : num_nodes(n), labels(std::move(node_labels)), special(n, false),
        edges(std::move(es)) {
    for (int s : special_nodes) {
      if (s < 0 || s >= n)
        throw std::invalid_argument("AffineDiagram: special mark out of range");
      special[s] = true;
    }
    normalize();
    validate();
  }

  void normalize() {
    for (auto& e : edges)
      if (e.a > e.b) std::swap(e.a, e.b);
    std::sort(edges.begin(), edges.end(),
              [](const DiagramEdge& x, const DiagramEdge& y) {
                return std::pair(x.a, x.b) < std::pair(y.a, y.b);
              });
  }

  void validate() const {
    if (num_nodes <= 0)
      throw std::invalid_argument("AffineDiagram: empty diagram");
    if (static_cast<int>(labels.size()) != num_nodes ||
        static_cast<int>(special.size()) != num_nodes)
      throw std::invalid_argument("AffineDiagram: attribute sizes");
    for (const auto& l : labels) {
      if (l.empty()) throw std::invalid_argument("AffineDiagram: empty label");
      for (char c : l)
        if (std::isspace(static_cast<unsigned char>(c)))
          throw std::invalid_argument("AffineDiagram: whitespace in label");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
      if (e.a < 0 || e.b < 0 || e.a >= num_nodes || e.b >= num_nodes)
        throw std::invalid_argument("AffineDiagram: edge endpoint range");
      if (e.a >= e.b)
        throw std::invalid_argument("AffineDiagram: edge not normalized");
      if (!seen.insert({e.a, e.b}).second)
        throw std::invalid_argument("AffineDiagram: duplicate edge");
      if (e.bond < 1 || e.bond > 4)
        throw std::invalid_argument("AffineDiagram: bond out of range");
      if (e.bond >= 2) {
        if (e.arrow_to != e.a && e.arrow_to != e.b)
          throw std::invalid_argument(
              "AffineDiagram: multiple bond requires an arrow to an endpoint");
      } else if (e.arrow_to != -1) {
        throw std::invalid_argument("AffineDiagram: single bond with arrow");
      }
    }
  }

  /// Bond multiplicity between two nodes (0 when non-adjacent).
  int bond(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (const auto& e : edges)
      if (e.a == i && e.b == j) return e.bond;
    return 0;
  }

  const DiagramEdge* find_edge(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (const auto& e : edges)
      if (e.a == i && e.b == j) return &e;
    return nullptr;
  }

  std::vector<int> neighbors(int i) const {
    std::vector<int> r;
    for (const auto& e : edges) {
      if (e.a == i) r.push_back(e.b);
      if (e.b == i) r.push_back(e.a);
    }
    std::sort(r.begin(), r.end());
    return r;
  }

  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }

  std::vector<int> special_nodes() const {
    std::vector<int> r;
    for (int i = 0; i < num_nodes; ++i)
      if (special[i]) r.push_back(i);
    return r;
  }

  /// Coxeter exponent m(i, j) from the bond count: non-adjacent 2, single 3,
  /// double 4, triple 6; the bond-4 edge means m = infinity, encoded as 0.
  int coxeter_m(int i, int j) const {
    if (i == j) return 1;
    switch (bond(i, j)) {
      case 0: return 2;
      case 1: return 3;
      case 2: return 4;
      case 3: return 6;
      case 4: return 0;
    }
    throw std::logic_error("coxeter_m");
  }

  /// Checks that `perm` (node -> node) is a diagram automorphism preserving
  /// bonds, arrows, and special marks.
  bool is_automorphism(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != num_nodes) return false;
    std::vector<bool> hit(num_nodes, false);
    for (int v : perm) {
      if (v < 0 || v >= num_nodes || hit[v]) return false;
      hit[v] = true;
    }
    for (int i = 0; i < num_nodes; ++i)
      if (special[i] != special[perm[i]]) return false;
    for (const auto& e : edges) {
      const DiagramEdge* f = find_edge(perm[e.a], perm[e.b]);
      if (f == nullptr || f->bond != e.bond) return false;
      int mapped_arrow = e.arrow_to == -1 ? -1 : perm[e.arrow_to];
      if (f->arrow_to != mapped_arrow) return false;
    }
    // Edge count equality plus injectivity makes the edge map a bijection.
    return true;
  }

  /// Connected components of an induced node subset, each sorted, listed in
  /// order of smallest member.
  std::vector<std::vector<int>> components(const std::vector<int>& nodes) const {
    std::set<int> in(nodes.begin(), nodes.end());
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (int start : nodes) {
      if (seen.count(start)) continue;
      std::vector<int> comp, stack{start};
      seen.insert(start);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int w : neighbors(v))
          if (in.count(w) && !seen.count(w)) {
            seen.insert(w);
            stack.push_back(w);
          }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(comp);
    }
    return out;
  }

  /// Induced subdiagram on `nodes` (sorted ascending); second result maps new
  /// node ids to original ids.
  std::pair<AffineDiagram, std::vector<int>> subdiagram(
      std::vector<int> nodes) const {
    std::sort(nodes.begin(), nodes.end());
    std::map<int, int> to_new;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i] < 0 || nodes[i] >= num_nodes)
        throw std::invalid_argument("subdiagram: node out of range");
      if (!to_new.emplace(nodes[i], static_cast<int>(i)).second)
        throw std::invalid_argument("subdiagram: duplicate node");
    }
    AffineDiagram d;
    d.num_nodes = static_cast<int>(nodes.size());
    for (int v : nodes) {
      d.labels.push_back(labels[v]);
      d.special.push_back(special[v]);
    }
    for (const auto& e : edges) {
      auto ia = to_new.find(e.a), ib = to_new.find(e.b);
      if (ia != to_new.end() && ib != to_new.end())
        d.edges.push_back({ia->second, ib->second, e.bond,
                           e.arrow_to == -1 ? -1 : to_new.at(e.arrow_to)});
    }
    d.normalize();
    d.validate();
    return {d, nodes};
  }

  friend bool operator==(const AffineDiagram&, const AffineDiagram&) = default;

  // ---- text form ----------------------------------------------------------

  /**
   * Line-oriented text form:
   *
   *   nodes <N>
   *   node <id> <special|-> <label>          (one line per node, ascending)
   *   edge <a> <b> <bond> <-|-><id>>         ("-" = no arrow, "->3" = arrow)
   *
   * '#' starts a comment line; blank lines are ignored on input.  Rendering
   * is canonical, so render/parse round-trips are bit-exact.
   */
  std::string render_text() const {
    std::ostringstream os;
    os << "nodes " << num_nodes << "\n";
    for (int i = 0; i < num_nodes; ++i)
      os << "node " << i << " " << (special[i] ? "special" : "-") << " "
         << labels[i] << "\n";
    for (const auto& e : edges) {
      os << "edge " << e.a << " " << e.b << " " << e.bond << " ";
      if (e.arrow_to == -1)
        os << "-";
      else
        os << "->" << e.arrow_to;
      os << "\n";
    }
    return os.str();
  }

  static AffineDiagram parse_text(const std::string& text) {
    std::vector<std::vector<std::string>> rows = tokenize_lines(text);
    return parse_rows(rows, 0, rows.size());
  }

  // Shared helpers for the text formats (also used by LocalIndex).
  static std::vector<std::vector<std::string>> tokenize_lines(
      const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      std::istringstream ls(line);
      std::vector<std::string> toks;
      std::string t;
      while (ls >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
      }
      if (!toks.empty()) rows.push_back(toks);
    }
    return rows;
  }

  static AffineDiagram parse_rows(
      const std::vector<std::vector<std::string>>& rows, std::size_t begin,
      std::size_t end) {
    auto fail = [](const std::string& why) {
      throw std::invalid_argument("diagram parse error: " + why);
    };
    if (begin >= end || rows[begin].size() != 2 || rows[begin][0] != "nodes")
      fail("expected 'nodes <N>' header");
    int n = parse_int(rows[begin][1]);
    if (n <= 0) fail("node count must be positive");
    AffineDiagram d;
    d.num_nodes = n;
    d.labels.assign(n, "");
    d.special.assign(n, false);
    std::size_t r = begin + 1;
    for (int i = 0; i < n; ++i, ++r) {
      if (r >= end || rows[r].size() != 4 || rows[r][0] != "node")
        fail("expected 'node <id> <special|-> <label>'");
      if (parse_int(rows[r][1]) != i) fail("node ids must be 0..N-1 in order");
      if (rows[r][2] == "special")
        d.special[i] = true;
      else if (rows[r][2] != "-")
        fail("special mark must be 'special' or '-'");
      d.labels[i] = rows[r][3];
    }
    for (; r < end; ++r) {
      if (rows[r][0] != "edge" || rows[r].size() != 5)
        fail("expected 'edge <a> <b> <bond> <arrow>'");
      DiagramEdge e;
      e.a = parse_int(rows[r][1]);
      e.b = parse_int(rows[r][2]);
      e.bond = parse_int(rows[r][3]);
      const std::string& at = rows[r][4];
      if (at == "-")
        e.arrow_to = -1;
      else if (at.size() > 2 && at[0] == '-' && at[1] == '>')
        e.arrow_to = parse_int(at.substr(2));
      else
        fail("arrow must be '-' or '-><id>'");
      d.edges.push_back(e);
    }
    d.normalize();
    d.validate();
    return d;
  }

  static int parse_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("diagram parse error: bad integer '" + s +
                                  "'");
    }
    if (used != s.size())
      throw std::invalid_argument("diagram parse error: bad integer '" + s +
                                  "'");
    return v;
  }
};

/// An affine diagram with an unramified-Frobenius action.
struct LocalIndex {
  AffineDiagram diagram;
  std::vector<int> frobenius;  // permutation of node ids

  void validate() const {
    diagram.validate();
    if (!diagram.is_automorphism(frobenius))
      throw std::invalid_argument(
          "LocalIndex: frobenius is not a diagram automorphism");
  }

  bool frobenius_trivial() const {
    for (std::size_t i = 0; i < frobenius.size(); ++i)
      if (frobenius[i] != static_cast<int>(i)) return false;
    return true;
  }

  /// Frobenius orbits, each sorted, in order of smallest member.
  std::vector<std::vector<int>> orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(diagram.num_nodes, false);
    for (int i = 0; i < diagram.num_nodes; ++i) {
      if (seen[i]) continue;
      std::vector<int> orb;
      int v = i;
      while (!seen[v]) {
        seen[v] = true;
        orb.push_back(v);
        v = frobenius[v];
      }
      std::sort(orb.begin(), orb.end());
      out.push_back(orb);
    }
    return out;
  }

  std::string render_text() const {
    std::string s = diagram.render_text();
    s += "frob";
    for (int v : frobenius) s += " " + std::to_string(v);
    s += "\n";
    return s;
  }

  static LocalIndex parse_text(const std::string& text) {
    auto rows = AffineDiagram::tokenize_lines(text);
    if (rows.empty() || rows.back().empty() || rows.back()[0] != "frob")
      throw std::invalid_argument(
          "local index parse error: missing 'frob' line");
    LocalIndex li;
    li.diagram = AffineDiagram::parse_rows(rows, 0, rows.size() - 1);
    const auto& fr = rows.back();
    for (std::size_t i = 1; i < fr.size(); ++i)
      li.frobenius.push_back(AffineDiagram::parse_int(fr[i]));
    li.validate();
    return li;
  }

  friend bool operator==(const LocalIndex&, const LocalIndex&) = default;
};

/// A facet: a proper subset J of the nodes of an affine diagram, sorted.
/// The empty facet is the chamber (Iwahori case).
using Facet = std::vector<int>;

/// All 2^n - 1 facets (proper subsets) in deterministic bitmask order.
inline std::vector<Facet> enumerate_facets(const AffineDiagram& d) {
  std::vector<Facet> out;
  unsigned full = (1u << d.num_nodes) - 1u;
  for (unsigned mask = 0; mask < full; ++mask) {
    Facet f;
    for (int i = 0; i < d.num_nodes; ++i)
      if (mask & (1u << i)) f.push_back(i);
    out.push_back(f);
  }
  return out;
}

inline void validate_facet(const AffineDiagram& d, const Facet& f) {
  if (static_cast<int>(f.size()) >= d.num_nodes)
    throw std::invalid_argument("facet must be a proper subset of the nodes");
  int prev = -1;
  for (int v : f) {
    if (v <= prev || v >= d.num_nodes)
      throw std::invalid_argument("facet nodes must be sorted, distinct, in range");
    prev = v;
  }
}

/**
 * Searches for a bijection of nodes preserving adjacency, bond counts and
 * (optionally) special marks; arrow directions are deliberately ignored.
 * Returns the mapping a-node -> b-node when one exists.
 */
inline std::optional<std::vector<int>> diagram_isomorphic_up_to_arrows(
    const AffineDiagram& a, const AffineDiagram& b, bool respect_special) {
  if (a.num_nodes != b.num_nodes || a.edges.size() != b.edges.size())
    return std::nullopt;
  int n = a.num_nodes;
  // Node signature: sorted multiset of incident bonds (+ special flag).
  auto signature = [&](const AffineDiagram& d, int v) {
    std::vector<int> sig;
    for (const auto& e : d.edges) {
      if (e.a == v) sig.push_back(e.bond);
      if (e.b == v) sig.push_back(e.bond);
    }
    std::sort(sig.begin(), sig.end());
    if (respect_special) sig.push_back(d.special[v] ? 1 : 0);
    return sig;
  };
  std::vector<std::vector<int>> siga(n), sigb(n);
  for (int v = 0; v < n; ++v) {
    siga[v] = signature(a, v);
    sigb[v] = signature(b, v);
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto compatible = [&](int av, int bv) {
    if (siga[av] != sigb[bv]) return false;
    for (int prev = 0; prev < av; ++prev) {
      if (map[prev] == -1) continue;
      if (a.bond(av, prev) != b.bond(bv, map[prev])) return false;
    }
    return true;
  };
  // Backtracking on nodes in index order.
  std::vector<int> choice(n, -1);
  int level = 0;
  while (level >= 0) {
    if (level == n) return map;
    bool advanced = false;
    for (int cand = choice[level] + 1; cand < n; ++cand) {
      if (used[cand] || !compatible(level, cand)) continue;
      choice[level] = cand;
      map[level] = cand;
      used[cand] = true;
      ++level;
      if (level < n) choice[level] = -1;
      advanced = true;
      break;
    }
    if (!advanced) {
      choice[level] = -1;
      --level;
      if (level >= 0) {
        used[map[level]] = false;
        map[level] = -1;
      }
    }
  }
  return std::nullopt;
}

/**
 * Checks that `map` is a bijection of nodes carrying local index `a` to `b`:
 * bond counts preserved (arrow directions ignored), Frobenius actions
 * intertwined, and special marks preserved when `respect_special` is set.
 */
inline bool bijection_intertwines(const LocalIndex& a, const LocalIndex& b,
                                  const std::vector<int>& map,
                                  bool respect_special) {
  int n = a.diagram.num_nodes;
  if (b.diagram.num_nodes != n || static_cast<int>(map.size()) != n)
    return false;
  std::vector<bool> hit(n, false);
  for (int v : map) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (int i = 0; i < n; ++i) {
    if (respect_special && a.diagram.special[i] != b.diagram.special[map[i]])
      return false;
    if (map[a.frobenius[i]] != b.frobenius[map[i]]) return false;
    for (int j = i + 1; j < n; ++j)
      if (a.diagram.bond(i, j) != b.diagram.bond(map[i], map[j])) return false;
  }
  return true;
}

/**
 * Folds a local index by its Frobenius action, producing the relative affine
 * diagram.  Orbits become nodes (ordered by smallest member); edges between
 * orbits follow a fixed table of supported configurations:
 *
 *   - singleton-singleton: bond and arrow copied;
 *   - non-adjacent 2-orbit joined to a singleton or to another 2-orbit by a
 *     Frobenius-matched parallel pair of equal-bond edges: bond 1 folds to a
 *     double bond pointing at the folded pair, bond 2 folds to the infinite
 *     bond; bond/arrow copied when no fold degeneracy occurs (parallel single
 *     or double bonds between two 2-orbits fold to the same bond);
 *   - adjacent 2-orbit (internal single bond) joined by a parallel pair to a
 *     non-adjacent 2-orbit: bond 1 folds to a double bond pointing at the
 *     adjacent orbit, bond 2 folds to the infinite bond.
 *
 * Everything else throws an unsupported-folding std::invalid_argument.
 */
inline AffineDiagram fold(const LocalIndex& li) {
  li.validate();
  const AffineDiagram& d = li.diagram;
  auto orbs = li.orbits();
  int m = static_cast<int>(orbs.size());
  std::vector<int> orbit_of(d.num_nodes, -1);
  for (int oi = 0; oi < m; ++oi)
    for (int v : orbs[oi]) orbit_of[v] = oi;

  auto unsupported = [&](const std::string& why) {
    throw std::invalid_argument("unsupported folding configuration: " + why);
  };

  // Per-orbit classification.
  std::vector<bool> adjacent_pair(m, false);
  for (int oi = 0; oi < m; ++oi) {
    const auto& o = orbs[oi];
    if (o.size() > 2) unsupported("orbit larger than two nodes");
    if (o.size() == 2) {
      const DiagramEdge* e = d.find_edge(o[0], o[1]);
      if (e != nullptr) {
        if (e->bond != 1)
          unsupported("adjacent orbit with multiple internal bond");
        adjacent_pair[oi] = true;
      }
    }
  }

  AffineDiagram out;
  out.num_nodes = m;
  for (const auto& o : orbs) {
    std::string label = d.labels[o[0]];
    for (std::size_t t = 1; t < o.size(); ++t) label += "+" + d.labels[o[t]];
    out.labels.push_back(label);
    bool sp = false;
    for (int v : o) sp = sp || d.special[v];
    out.special.push_back(sp);
  }

  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      std::vector<const DiagramEdge*> between;
      for (const auto& e : d.edges)
        if ((orbit_of[e.a] == p && orbit_of[e.b] == q) ||
            (orbit_of[e.a] == q && orbit_of[e.b] == p))
          between.push_back(&e);
      if (between.empty()) continue;

      std::size_t sp = orbs[p].size(), sq = orbs[q].size();
      DiagramEdge fe;
      fe.a = p;
      fe.b = q;

      if (sp == 1 && sq == 1) {
        if (between.size() != 1) unsupported("parallel edges between singletons");
        fe.bond = between[0]->bond;
        fe.arrow_to = between[0]->arrow_to == -1
                          ? -1
                          : orbit_of[between[0]->arrow_to];
        out.edges.push_back(fe);
        continue;
      }

      // One of the orbits is a 2-orbit; the configuration must be a
      // Frobenius-matched parallel pair of equal bonds.
      if (between.size() != 2) unsupported("unmatched edge multiplicity");
      const DiagramEdge *e1 = between[0], *e2 = between[1];
      if (e1->bond != e2->bond) unsupported("unequal parallel bonds");
      // Frobenius must map one edge to the other.
      auto image = [&](const DiagramEdge* e) {
        int x = li.frobenius[e->a], y = li.frobenius[e->b];
        if (x > y) std::swap(x, y);
        return std::pair(x, y);
      };
      if (image(e1) != std::pair(e2->a, e2->b))
        unsupported("parallel edges not matched by Frobenius");
      int b = e1->bond;
      if (sp == 2 && sq == 2 && !adjacent_pair[p] && !adjacent_pair[q]) {
        // Parallel transport between two flipped 2-orbits: bond unchanged.
        fe.bond = b;
        fe.arrow_to =
            e1->arrow_to == -1 ? -1 : orbit_of[e1->arrow_to];
        out.edges.push_back(fe);
        continue;
      }
      if (sp == 2 && sq == 2 && adjacent_pair[p] && adjacent_pair[q])
        unsupported("two adjacent orbits joined");

      // Folding degeneracy: a 2-orbit collapses onto a singleton, or an
      // adjacent 2-orbit meets a non-adjacent one.  The folded multiple bond
      // points at the collapsing orbit.
      int target;
      if (sp == 2 && sq == 2)
        target = adjacent_pair[p] ? p : q;  // exactly one is adjacent here
      else
        target = sp == 2 ? p : q;
      if ((sp == 1 || sq == 1) && adjacent_pair[target])
        unsupported("adjacent orbit folded onto singleton");
      if (b == 1) {
        fe.bond = 2;
        fe.arrow_to = target;
      } else if (b == 2) {
        fe.bond = 4;
        fe.arrow_to = target;
      } else {
        unsupported("bond count in fold degeneracy");
      }
      out.edges.push_back(fe);
    }

  out.normalize();
  out.validate();
  return out;
}

}  // namespace unillc
