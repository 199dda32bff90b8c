// Tests for decorated affine diagrams: the frozen node/edge encodings used by
// the structure catalog, folding by a Frobenius action, facet enumeration,
// isomorphism up to arrows, and the text format.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "unillc/diagram.hpp"

using unillc::AffineDiagram;
using unillc::DiagramEdge;
using unillc::Facet;
using unillc::LocalIndex;

namespace {

std::vector<std::string> vlabels(int n, const std::string& prefix) {
  std::vector<std::string> ls;
  for (int i = 0; i < n; ++i) ls.push_back(prefix + std::to_string(i));
  return ls;
}

AffineDiagram diag(int n, const std::string& prefix,
                   std::vector<int> specials, std::vector<DiagramEdge> edges) {
  return AffineDiagram(n, vlabels(n, prefix), std::move(specials),
                       std::move(edges));
}

// ---- frozen family encodings (duplicated here as literal oracle data) -----

// Fork-tailed chain: two short legs 0,1 joined to 2, chain to a long end node.
AffineDiagram bc_local(int n) {
  REQUIRE(n >= 2);
  std::vector<DiagramEdge> es;
  if (n == 2) {
    es = {{0, 2, 2, 0}, {1, 2, 2, 1}};
  } else {
    es = {{0, 2, 1, -1}, {1, 2, 1, -1}};
    for (int i = 2; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n - 1});
  }
  return diag(n + 1, "v", {0, 1}, std::move(es));
}

AffineDiagram bc_companion(int n) {
  REQUIRE(n >= 2);
  std::vector<DiagramEdge> es;
  if (n == 2) {
    es = {{0, 2, 2, 2}, {1, 2, 2, 2}};
  } else {
    es = {{0, 2, 1, -1}, {1, 2, 1, -1}};
    for (int i = 2; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n});
  }
  return diag(n + 1, "w", {0, 1}, std::move(es));
}

// Chain with double bonds pointing outward at both ends (degenerate n = 1:
// the infinite bond).
AffineDiagram cbc_local(int n) {
  REQUIRE(n >= 1);
  std::vector<DiagramEdge> es;
  if (n == 1) {
    es = {{0, 1, 4, 0}};
  } else {
    es = {{0, 1, 2, 0}};
    for (int i = 1; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n - 1});
  }
  return diag(n + 1, "v", {0, n}, std::move(es));
}

// Symplectic-shaped affine chain: double bonds pointing inward at both ends.
AffineDiagram c_tilde(int n, const std::string& prefix) {
  REQUIRE(n >= 1);
  std::vector<DiagramEdge> es;
  if (n == 1) {
    es = {{0, 1, 4, 1}};
  } else {
    es = {{0, 1, 2, 1}};
    for (int i = 1; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
    es.push_back({n - 1, n, 2, n - 1});
  }
  return diag(n + 1, prefix, {0, n}, std::move(es));
}

// Chain with a double bond pointing outward at the start, inward at the end.
AffineDiagram cb_local(int n) {
  REQUIRE(n >= 2);
  std::vector<DiagramEdge> es = {{0, 1, 2, 0}};
  for (int i = 1; i <= n - 2; ++i) es.push_back({i, i + 1, 1, -1});
  es.push_back({n - 1, n, 2, n});
  return diag(n + 1, "v", {0, n}, std::move(es));
}

// m-node chain with both double bonds pointing outward (m >= 3 here).
AffineDiagram twocb_local(int m) {
  REQUIRE(m >= 3);
  std::vector<DiagramEdge> es = {{0, 1, 2, 0}};
  for (int i = 1; i <= m - 3; ++i) es.push_back({i, i + 1, 1, -1});
  es.push_back({m - 2, m - 1, 2, m - 1});
  return diag(m, "v", {0, m - 1}, std::move(es));
}

AffineDiagram f4_local() {
  return diag(5, "v", {0},
              {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 3, 2, 2}, {3, 4, 1, -1}});
}

AffineDiagram f4_companion() {
  return diag(5, "w", {0},
              {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 3, 2, 3}, {3, 4, 1, -1}});
}

AffineDiagram g2_local() {
  return diag(3, "v", {0}, {{0, 1, 1, -1}, {1, 2, 3, 1}});
}

AffineDiagram g2_companion() {
  return diag(3, "w", {0}, {{0, 1, 1, -1}, {1, 2, 3, 2}});
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

std::vector<int> swap01(int n) {
  auto p = identity_perm(n);
  std::swap(p[0], p[1]);
  return p;
}

std::vector<int> flip_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
  return p;
}

}  // namespace

TEST_CASE("frozen family encodings validate") {
  for (int n = 2; n <= 8; ++n) {
    CHECK_NOTHROW(bc_local(n).validate());
    CHECK_NOTHROW(bc_companion(n).validate());
    CHECK_NOTHROW(cb_local(n).validate());
    CHECK(bc_local(n).num_nodes == n + 1);
    CHECK(bc_local(n).special_nodes() == std::vector<int>{0, 1});
    CHECK(cb_local(n).special_nodes() == std::vector<int>{0, n});
  }
  for (int n = 1; n <= 8; ++n) {
    CHECK_NOTHROW(cbc_local(n).validate());
    CHECK_NOTHROW(c_tilde(n, "w").validate());
    CHECK(cbc_local(n).special_nodes() == std::vector<int>{0, n});
  }
  for (int m = 3; m <= 8; ++m) CHECK_NOTHROW(twocb_local(m).validate());
  CHECK_NOTHROW(f4_local().validate());
  CHECK_NOTHROW(f4_companion().validate());
  CHECK_NOTHROW(g2_local().validate());
  CHECK_NOTHROW(g2_companion().validate());

  // Degree sequences: the fork-tailed chain has one degree-2 join node.
  auto b4 = bc_local(4);
  CHECK(b4.degree(2) == 3);
  CHECK(b4.degree(0) == 1);
  CHECK(b4.bond(3, 4) == 2);
  CHECK(b4.find_edge(3, 4)->arrow_to == 3);
  auto w4 = bc_companion(4);
  CHECK(w4.find_edge(3, 4)->arrow_to == 4);  // only arrows differ
}

TEST_CASE("diagram validation rejects malformed input") {
  // Arrow on a single bond.
  CHECK_THROWS_AS(diag(2, "v", {}, {{0, 1, 1, 0}}), std::invalid_argument);
  // Multiple bond without arrow.
  CHECK_THROWS_AS(diag(2, "v", {}, {{0, 1, 2, -1}}), std::invalid_argument);
  // Arrow to a non-endpoint.
  CHECK_THROWS_AS(diag(3, "v", {}, {{0, 1, 2, 2}}), std::invalid_argument);
  // Bond out of range.
  CHECK_THROWS_AS(diag(2, "v", {}, {{0, 1, 5, 0}}), std::invalid_argument);
  // Duplicate edge.
  CHECK_THROWS_AS(diag(2, "v", {}, {{0, 1, 1, -1}, {1, 0, 1, -1}}),
                  std::invalid_argument);
  // Endpoint out of range.
  CHECK_THROWS_AS(diag(2, "v", {}, {{0, 2, 1, -1}}), std::invalid_argument);
  // Special mark out of range.
  CHECK_THROWS_AS(diag(2, "v", {5}, {}), std::invalid_argument);
  // Loop edge.
  CHECK_THROWS_AS(diag(2, "v", {}, {{1, 1, 1, -1}}), std::invalid_argument);
}

TEST_CASE("automorphism check") {
  auto b2 = bc_local(2);
  CHECK(b2.is_automorphism({1, 0, 2}));
  CHECK(b2.is_automorphism({0, 1, 2}));
  CHECK_FALSE(b2.is_automorphism({2, 1, 0}));  // moves special onto non-special
  CHECK_FALSE(b2.is_automorphism({0, 1}));     // wrong size
  CHECK_FALSE(b2.is_automorphism({0, 0, 2}));  // not a permutation

  // The companion has both leg arrows pointing at the middle, so the swap is
  // still an automorphism.
  CHECK(bc_companion(2).is_automorphism({1, 0, 2}));

  // Asymmetric chain (one arrow out, one in): the flip reverses an arrow.
  CHECK_FALSE(cbc_local(2).is_automorphism({2, 1, 0}));
  // Fully symmetric double-ended chains: flip works.
  CHECK(cb_local(2).is_automorphism({2, 1, 0}));
  CHECK(twocb_local(3).is_automorphism({2, 1, 0}));
  CHECK(twocb_local(5).is_automorphism(flip_perm(5)));
  CHECK(c_tilde(4, "w").is_automorphism(flip_perm(5)));
}

TEST_CASE("local index validation and orbits") {
  LocalIndex li{bc_local(3), swap01(4)};
  CHECK_NOTHROW(li.validate());
  CHECK_FALSE(li.frobenius_trivial());
  auto orbs = li.orbits();
  REQUIRE(orbs.size() == 3);
  CHECK(orbs[0] == std::vector<int>{0, 1});
  CHECK(orbs[1] == std::vector<int>{2});
  CHECK(orbs[2] == std::vector<int>{3});

  LocalIndex bad{cbc_local(2), flip_perm(3)};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  LocalIndex triv{f4_local(), identity_perm(5)};
  CHECK(triv.frobenius_trivial());
  CHECK(triv.orbits().size() == 5);
}

TEST_CASE("folding with trivial action copies the diagram") {
  for (const AffineDiagram& d :
       {bc_local(3), cbc_local(2), cb_local(4), f4_local(), g2_local(),
        cbc_local(1)}) {
    LocalIndex li{d, identity_perm(d.num_nodes)};
    CHECK(fold(li) == d);
  }
}

TEST_CASE("fork swap folds: legs collapse to a double-bond end") {
  // Rank 3: parallel single bonds fold to a double bond at the merged node.
  LocalIndex li3{bc_local(3), swap01(4)};
  AffineDiagram expect3(3, {"v0+v1", "v2", "v3"}, {0},
                        {{0, 1, 2, 0}, {1, 2, 2, 1}});
  CHECK(fold(li3) == expect3);

  LocalIndex li4{bc_local(4), swap01(5)};
  AffineDiagram expect4(4, {"v0+v1", "v2", "v3", "v4"}, {0},
                        {{0, 1, 2, 0}, {1, 2, 1, -1}, {2, 3, 2, 2}});
  CHECK(fold(li4) == expect4);

  // Rank 2 degenerate: parallel double bonds fold to the infinite bond.
  LocalIndex li2{bc_local(2), swap01(3)};
  AffineDiagram expect2(2, {"v0+v1", "v2"}, {0}, {{0, 1, 4, 0}});
  CHECK(fold(li2) == expect2);

  // Companion side folds to the same Coxeter shapes.
  LocalIndex co2{bc_companion(2), swap01(3)};
  AffineDiagram co_expect2(2, {"w0+w1", "w2"}, {0}, {{0, 1, 4, 0}});
  CHECK(fold(co2) == co_expect2);
  LocalIndex co3{bc_companion(3), swap01(4)};
  AffineDiagram co_expect3(3, {"w0+w1", "w2", "w3"}, {0},
                           {{0, 1, 2, 0}, {1, 2, 2, 2}});
  CHECK(fold(co3) == co_expect3);
}

TEST_CASE("flipped chain folds") {
  // Odd length: middle node fixed; outer double bonds transport.
  LocalIndex m3{twocb_local(3), flip_perm(3)};
  AffineDiagram e3(2, {"v0+v2", "v1"}, {0}, {{0, 1, 4, 0}});
  CHECK(fold(m3) == e3);

  LocalIndex m5{twocb_local(5), flip_perm(5)};
  AffineDiagram e5(3, {"v0+v4", "v1+v3", "v2"}, {0},
                   {{0, 1, 2, 0}, {1, 2, 2, 1}});
  CHECK(fold(m5) == e5);

  LocalIndex m7{twocb_local(7), flip_perm(7)};
  AffineDiagram e7(4, {"v0+v6", "v1+v5", "v2+v4", "v3"}, {0},
                   {{0, 1, 2, 0}, {1, 2, 1, -1}, {2, 3, 2, 2}});
  CHECK(fold(m7) == e7);

  // Even length: middle orbit is an adjacent pair.
  LocalIndex m4{twocb_local(4), flip_perm(4)};
  AffineDiagram e4(2, {"v0+v3", "v1+v2"}, {0}, {{0, 1, 4, 1}});
  CHECK(fold(m4) == e4);

  LocalIndex m6{twocb_local(6), flip_perm(6)};
  AffineDiagram e6(3, {"v0+v5", "v1+v4", "v2+v3"}, {0},
                   {{0, 1, 2, 0}, {1, 2, 2, 2}});
  CHECK(fold(m6) == e6);

  LocalIndex m8{twocb_local(8), flip_perm(8)};
  AffineDiagram e8(4, {"v0+v7", "v1+v6", "v2+v5", "v3+v4"}, {0},
                   {{0, 1, 2, 0}, {1, 2, 1, -1}, {2, 3, 2, 3}});
  CHECK(fold(m8) == e8);

  // Companion chains fold the same way.
  LocalIndex c4{c_tilde(3, "w"), flip_perm(4)};
  AffineDiagram ce4(2, {"w0+w3", "w1+w2"}, {0}, {{0, 1, 4, 1}});
  CHECK(fold(c4) == ce4);
  LocalIndex c5{c_tilde(4, "w"), flip_perm(5)};
  // The outer double bond of the companion chain points inward, so its
  // transported arrow lands on the second orbit.
  AffineDiagram ce5(3, {"w0+w4", "w1+w3", "w2"}, {0},
                    {{0, 1, 2, 1}, {1, 2, 2, 1}});
  CHECK(fold(c5) == ce5);
}

TEST_CASE("unsupported folding configurations are rejected") {
  // Orbit of size three (triangle with a rotation).
  AffineDiagram tri(3, {"a", "b", "c"}, {},
                    {{0, 1, 1, -1}, {0, 2, 1, -1}, {1, 2, 1, -1}});
  LocalIndex rot{tri, {1, 2, 0}};
  CHECK_THROWS_WITH(fold(rot), Catch::Matchers::ContainsSubstring("orbit"));

  // Parallel triple bonds collapsing onto a singleton.
  AffineDiagram tw(3, {"a", "b", "c"}, {}, {{0, 2, 3, 2}, {1, 2, 3, 2}});
  LocalIndex twli{tw, {1, 0, 2}};
  CHECK_THROWS_WITH(fold(twli),
                    Catch::Matchers::ContainsSubstring("bond count"));

  // Adjacent pair collapsing onto a singleton.
  AffineDiagram path(3, {"a", "b", "c"}, {}, {{0, 1, 1, -1}, {0, 2, 1, -1},
                                              {1, 2, 1, -1}});
  // (that is the triangle again: 0-1 internal, both joined to 2)
  LocalIndex adj{path, {1, 0, 2}};
  CHECK_THROWS_WITH(fold(adj),
                    Catch::Matchers::ContainsSubstring("adjacent orbit"));
}

TEST_CASE("facet enumeration") {
  auto d = bc_local(2);
  auto fs = enumerate_facets(d);
  REQUIRE(fs.size() == 7);
  CHECK(fs[0] == Facet{});
  CHECK(fs[1] == Facet{0});
  CHECK(fs[2] == Facet{1});
  CHECK(fs[3] == Facet{0, 1});
  CHECK(fs[4] == Facet{2});
  CHECK(fs[5] == Facet{0, 2});
  CHECK(fs[6] == Facet{1, 2});
  for (const auto& f : fs) CHECK_NOTHROW(unillc::validate_facet(d, f));
  CHECK_THROWS_AS(unillc::validate_facet(d, Facet{0, 1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(unillc::validate_facet(d, Facet{1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(unillc::validate_facet(d, Facet{3}), std::invalid_argument);
  CHECK_THROWS_AS(unillc::validate_facet(d, Facet{0, 0}),
                  std::invalid_argument);

  CHECK(enumerate_facets(f4_local()).size() == 31);
}

TEST_CASE("components and subdiagrams") {
  auto b3 = bc_local(3);  // legs 0,1 joined at 2, then 3
  auto comps = b3.components({0, 1, 3});
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<int>{0});
  CHECK(comps[1] == std::vector<int>{1});
  CHECK(comps[2] == std::vector<int>{3});

  comps = b3.components({0, 1, 2});
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == std::vector<int>{0, 1, 2});

  auto [sub, orig] = b3.subdiagram({1, 2, 3});
  CHECK(orig == std::vector<int>{1, 2, 3});
  CHECK(sub.num_nodes == 3);
  CHECK(sub.labels == std::vector<std::string>{"v1", "v2", "v3"});
  CHECK(sub.special_nodes() == std::vector<int>{0});
  REQUIRE(sub.edges.size() == 2);
  CHECK(sub.edges[0] == DiagramEdge{0, 1, 1, -1});
  CHECK(sub.edges[1] == DiagramEdge{1, 2, 2, 1});

  CHECK_THROWS_AS(b3.subdiagram({0, 7}), std::invalid_argument);
  CHECK_THROWS_AS(b3.subdiagram({0, 0}), std::invalid_argument);
}

TEST_CASE("isomorphism up to arrows") {
  // Local index and companion differ only in arrow directions.
  auto m = diagram_isomorphic_up_to_arrows(bc_local(2), bc_companion(2), true);
  REQUIRE(m.has_value());
  CHECK(*m == std::vector<int>{0, 1, 2});
  CHECK(diagram_isomorphic_up_to_arrows(bc_local(5), bc_companion(5), true));
  CHECK(diagram_isomorphic_up_to_arrows(cbc_local(1), c_tilde(1, "w"), true));
  CHECK(diagram_isomorphic_up_to_arrows(f4_local(), f4_companion(), true));
  CHECK(diagram_isomorphic_up_to_arrows(g2_local(), g2_companion(), true));

  // Fork vs chain with the same bond multiset: isomorphic as graphs.
  auto m2 = diagram_isomorphic_up_to_arrows(bc_local(2), cb_local(2), true);
  REQUIRE(m2.has_value());
  // Verify the returned map directly.
  auto a = bc_local(2);
  auto b = cb_local(2);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(a.bond(i, j) == b.bond((*m2)[i], (*m2)[j]));

  // Different bond counts: no isomorphism.
  CHECK_FALSE(diagram_isomorphic_up_to_arrows(g2_local(), cb_local(2), false));
  // Different special marks matter only when respected.
  AffineDiagram s1(2, {"a", "b"}, {0}, {{0, 1, 2, 0}});
  AffineDiagram s2(2, {"a", "b"}, {0, 1}, {{0, 1, 2, 1}});
  CHECK_FALSE(diagram_isomorphic_up_to_arrows(s1, s2, true));
  CHECK(diagram_isomorphic_up_to_arrows(s1, s2, false));
  // Larger chain against fork of equal size: not isomorphic (degree 3 node).
  CHECK_FALSE(diagram_isomorphic_up_to_arrows(bc_local(4), cb_local(4), false));
}

TEST_CASE("bijection intertwines Frobenius actions") {
  LocalIndex a{bc_local(2), swap01(3)};
  LocalIndex b{bc_companion(2), swap01(3)};
  CHECK(bijection_intertwines(a, b, {0, 1, 2}, true));
  CHECK(bijection_intertwines(a, b, {1, 0, 2}, true));

  LocalIndex b_triv{bc_companion(2), identity_perm(3)};
  CHECK_FALSE(bijection_intertwines(a, b_triv, {0, 1, 2}, true));

  LocalIndex c{cb_local(2), identity_perm(3)};
  LocalIndex d{c_tilde(2, "w"), identity_perm(3)};
  CHECK(bijection_intertwines(c, d, {0, 1, 2}, true));
  // Arrow directions are ignored, so the flip also works here; moving a
  // special mark onto a plain node does not.
  CHECK(bijection_intertwines(c, d, {2, 1, 0}, true));
  CHECK_FALSE(bijection_intertwines(c, d, {1, 0, 2}, true));
  CHECK_FALSE(bijection_intertwines(c, d, {0, 1}, true));
}

TEST_CASE("text format round trips") {
  for (const AffineDiagram& d :
       {bc_local(2), bc_local(5), bc_companion(3), cbc_local(1), cbc_local(4),
        cb_local(2), twocb_local(6), f4_local(), g2_companion()}) {
    auto text = d.render_text();
    auto back = AffineDiagram::parse_text(text);
    CHECK(back == d);
    CHECK(back.render_text() == text);
  }

  LocalIndex li{twocb_local(5), flip_perm(5)};
  auto text = li.render_text();
  auto back = LocalIndex::parse_text(text);
  CHECK(back == li);
  CHECK(back.render_text() == text);

  // Exact expected rendering for a small case.
  std::string expect =
      "nodes 3\n"
      "node 0 special v0\n"
      "node 1 - v1\n"
      "node 2 special v2\n"
      "edge 0 1 2 ->0\n"
      "edge 1 2 2 ->1\n";
  CHECK(cbc_local(2).render_text() == expect);

  // Comments and blank lines are tolerated on input.
  std::string commented = "# chain\n\nnodes 2\nnode 0 - a\nnode 1 - b\n"
                          "edge 0 1 2 ->1  # inward\n";
  auto parsed = AffineDiagram::parse_text(commented);
  CHECK(parsed.num_nodes == 2);
  CHECK(parsed.find_edge(0, 1)->arrow_to == 1);
}

TEST_CASE("text format rejects malformed input") {
  using Catch::Matchers::ContainsSubstring;
  CHECK_THROWS_WITH(AffineDiagram::parse_text("negs 2\n"),
                    ContainsSubstring("nodes"));
  CHECK_THROWS_WITH(AffineDiagram::parse_text("nodes 0\n"),
                    ContainsSubstring("positive"));
  CHECK_THROWS_WITH(
      AffineDiagram::parse_text("nodes 1\nnode 0 - a\nedge 0 0 1 -\n"),
      ContainsSubstring("normalized"));
  CHECK_THROWS_WITH(
      AffineDiagram::parse_text("nodes 2\nnode 0 - a\nnode 1 - b\n"
                                "edge 0 1 2 =>1\n"),
      ContainsSubstring("arrow"));
  CHECK_THROWS_WITH(
      AffineDiagram::parse_text("nodes 2\nnode 1 - a\nnode 0 - b\n"),
      ContainsSubstring("order"));
  CHECK_THROWS_WITH(AffineDiagram::parse_text("nodes two\n"),
                    ContainsSubstring("integer"));
  // Frobenius line that is not an automorphism.
  std::string bad = cbc_local(2).render_text() + "frob 2 1 0\n";
  CHECK_THROWS_AS(LocalIndex::parse_text(bad), std::invalid_argument);
  // Missing frob line.
  CHECK_THROWS_WITH(LocalIndex::parse_text(cb_local(2).render_text()),
                    ContainsSubstring("frob"));
}
