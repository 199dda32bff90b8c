#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "unillc/catalog.hpp"

using namespace unillc;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  REQUIRE(EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                     nullptr) == 1);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace

TEST_CASE("catalog has the expected entry counts") {
  const Catalog& cat = builtin_catalog();
  std::map<std::string, int> by_family;
  for (const auto& e : cat.entries) by_family[e.family]++;
  CHECK(by_family["B-C"] == 30);
  CHECK(by_family["C-BC"] == 19);
  CHECK(by_family["C-B"] == 21);
  CHECK(by_family["2B-C"] == 30);
  CHECK(by_family["2C-B"] == 18);
  CHECK(by_family["F4^I"] == 2);
  CHECK(by_family["G2^I"] == 2);
  CHECK(cat.entries.size() == 122);

  // Ids are unique.
  std::map<std::string, int> ids;
  for (const auto& e : cat.entries) ids[e.id()]++;
  for (const auto& [id, count] : ids) {
    INFO(id);
    CHECK(count == 1);
  }
}

TEST_CASE("adjoint even unitary anchor entry") {
  const CatalogEntry& e = find_entry(builtin_catalog(), "B-C", 2, "ad");
  CHECK(e.id() == "B-C_2[d=1]");
  CHECK(e.group_desc == "PU(4) (ramified)");
  CHECK(e.abs_type == 'A');
  CHECK(e.abs_rank == 3);
  CHECK(e.dim_g == 15);
  CHECK(e.rank_nr == 2);
  CHECK(e.local.diagram.num_nodes == 3);
  CHECK(e.local.diagram.bond(0, 2) == 2);
  CHECK(e.local.diagram.bond(1, 2) == 2);
  CHECK(e.local.frobenius == std::vector<int>{0, 1, 2});
  CHECK(e.relative == e.local.diagram);  // trivial Frobenius: no folding
  CHECK(e.omega.order == 2);
  CHECK(e.omega.invariants == std::vector<long>{2});
  CHECK(e.omega.element_perms[1] == std::vector<int>{1, 0, 2});
  CHECK(e.iwahori_params_twice == std::vector<long>({2, 2, 2}));
  CHECK(e.torus.shape == "(q-1)^2");
  CHECK(e.dual.fixed_desc == "Sp(4,C)");
  CHECK(e.dual.fixed_dim == 10);
  CHECK(e.dual.fixed_exponents == std::vector<int>({1, 3}));
  CHECK(e.dual.a == 5);
  CHECK(e.dual.center_fixed_order == 2);
  CHECK(e.companion.name == "SO(5)");
  CHECK(e.companion.abs_type == 'B');
  CHECK(e.companion.lattice_tag == "ad");
  CHECK(e.companion.omega.order == 2);
  CHECK(e.relevance_char == "trivial");
}

TEST_CASE("isogeny variants of the even unitary family") {
  const Catalog& cat = builtin_catalog();
  // n = 3: d in {1, 2, 3, 6}.
  CHECK(find_entry(cat, "B-C", 3, "d=1").omega.order == 2);  // 6/1 even
  CHECK(find_entry(cat, "B-C", 3, "d=2").omega.order == 1);  // 6/2 odd
  CHECK(find_entry(cat, "B-C", 3, "d=3").omega.order == 2);  // 6/3 even
  CHECK(find_entry(cat, "B-C", 3, "d=6").omega.order == 1);  // 6/6 odd
  CHECK(find_entry(cat, "B-C", 3, "sc").isogeny == "d=6");
  CHECK(find_entry(cat, "B-C", 3, "sc").group_desc == "SU(6) (ramified)");
  CHECK(find_entry(cat, "B-C", 3, "d=2").group_desc ==
        "SU(6)/mu(3) (ramified)");
  // Dual component groups across the variants.
  CHECK(find_entry(cat, "B-C", 3, "d=1").dual.fixed_desc == "Sp(6,C)");
  CHECK(find_entry(cat, "B-C", 4, "d=2").dual.fixed_desc ==
        "PSp(8,C)x{1,-1}");  // d even, 8/2 even
  CHECK(find_entry(cat, "B-C", 4, "d=2").dual.pi0 == 2);
  CHECK(find_entry(cat, "B-C", 4, "d=8").dual.fixed_desc == "PSp(8,C)");
  CHECK(find_entry(cat, "B-C", 4, "d=8").dual.pi0 == 1);
  // Companions follow the dual fixed group.
  CHECK(find_entry(cat, "B-C", 4, "d=1").companion.name == "SO(9)");
  CHECK(find_entry(cat, "B-C", 4, "d=2").companion.name == "Spin(9)x{1,-1}");
  CHECK(find_entry(cat, "B-C", 4, "d=2").companion.disconnected);
  CHECK(find_entry(cat, "B-C", 4, "d=8").companion.name == "Spin(9)");
}

TEST_CASE("sc alias resolves per family") {
  const Catalog& cat = builtin_catalog();
  CHECK(find_entry(cat, "B-C", 3, "d=6").omega.order == 1);
  CHECK(&find_entry(cat, "B-C", 3, "sc") == &find_entry(cat, "B-C", 3, "d=6"));
  CHECK(&find_entry(cat, "C-BC", 2, "sc") ==
        &find_entry(cat, "C-BC", 2, "d=5"));
  CHECK(&find_entry(cat, "C-BC", 2, "ad") ==
        &find_entry(cat, "C-BC", 2, "d=1"));
  CHECK_THROWS_AS(normalize_isogeny("B-C", 3, "d=4"), std::invalid_argument);
  CHECK_THROWS_AS(normalize_isogeny("B-C", 3, "so"), std::invalid_argument);
  CHECK_THROWS_AS(normalize_isogeny("C-B", 3, "d=2"), std::invalid_argument);
  CHECK(normalize_isogeny("C-B", 3, "so") == "so");
  CHECK(normalize_isogeny("F4^I", 0, "ad") == "ad");
  CHECK_THROWS_AS(normalize_isogeny("F4^I", 0, "so"), std::invalid_argument);
}

TEST_CASE("odd unitary family anchor entries") {
  const Catalog& cat = builtin_catalog();
  const CatalogEntry& e1 = find_entry(cat, "C-BC", 1, "sc");
  CHECK(e1.id() == "C-BC_1[d=3]");
  CHECK(e1.group_desc == "SU(3) (ramified)");
  CHECK(e1.local.diagram.num_nodes == 2);
  CHECK(e1.local.diagram.bond(0, 1) == 4);
  const DiagramEdge* edge = e1.local.diagram.find_edge(0, 1);
  REQUIRE(edge != nullptr);
  CHECK(edge->arrow_to == 0);
  CHECK(e1.omega.order == 1);
  CHECK(e1.dual.fixed_desc == "SO(3,C)");
  CHECK(e1.dual.a == 5);
  CHECK(e1.companion.name == "Sp(2)");
  const DiagramEdge* cedge = e1.companion.local.diagram.find_edge(0, 1);
  REQUIRE(cedge != nullptr);
  CHECK(cedge->arrow_to == 1);  // companion arrow points the other way

  const CatalogEntry& e2 = find_entry(cat, "C-BC", 2, "ad");
  CHECK(e2.group_desc == "PU(5) (ramified)");
  CHECK(e2.dim_g == 24);
  CHECK(e2.dual.a == 14);
  CHECK(e2.omega.order == 1);
  // Both end bonds are double, arrows pointing toward node 0's end.
  CHECK(e2.local.diagram.find_edge(0, 1)->arrow_to == 0);
  CHECK(e2.local.diagram.find_edge(1, 2)->arrow_to == 1);
}

TEST_CASE("even orthogonal family anchor entries") {
  const Catalog& cat = builtin_catalog();
  const CatalogEntry& sc = find_entry(cat, "C-B", 3, "sc");
  const CatalogEntry& so = find_entry(cat, "C-B", 3, "so");
  const CatalogEntry& ad = find_entry(cat, "C-B", 3, "ad");
  CHECK(sc.group_desc == "Spin*(8) (ramified)");
  CHECK(so.group_desc == "SO*(8) (ramified)");
  CHECK(ad.group_desc == "PSO*(8) (ramified)");
  CHECK(sc.abs_type == 'D');
  CHECK(sc.abs_rank == 4);
  CHECK(sc.dim_g == 28);
  CHECK(sc.dual.a == 7);
  for (const CatalogEntry* e : {&sc, &so, &ad}) {
    CHECK(e->local.diagram.find_edge(0, 1)->arrow_to == 0);
    CHECK(e->local.diagram.find_edge(2, 3)->arrow_to == 3);
    CHECK(e->rank_nr == 3);
  }
  CHECK(sc.omega.order == 1);
  CHECK(so.omega.order == 2);
  CHECK(so.omega.element_perms[1] == std::vector<int>({0, 1, 2, 3}));
  CHECK(ad.omega.order == 2);
  CHECK(ad.omega.element_perms[1] == std::vector<int>({3, 2, 1, 0}));
  CHECK(sc.companion.name == "Sp(6)");
  CHECK(so.companion.name == "Sp(6)x{1,-1}");
  CHECK(ad.companion.name == "PSp(6)");
  CHECK(sc.dual.fixed_desc == "SO(7,C)");
  CHECK(so.dual.fixed_desc == "O(7,C)");
  CHECK(so.dual.pi0 == 2);
  CHECK(ad.dual.fixed_desc == "Spin(7,C)");
}

TEST_CASE("twisted families fold to the frozen relative diagrams") {
  const Catalog& cat = builtin_catalog();

  const CatalogEntry& b2 = find_entry(cat, "2B-C", 2, "ad");
  AffineDiagram expect_b2(2, {"v0+v1", "v2"}, {0}, {{0, 1, 4, 0}});
  CHECK(b2.relative == expect_b2);
  CHECK(b2.iwahori_params_twice == std::vector<long>({4, 2}));
  CHECK(b2.omega.order == 2);
  CHECK(b2.omega.element_perms[1] == std::vector<int>({0, 1}));  // trivial
  CHECK(b2.relevance_char == "order2");
  CHECK(b2.companion.splitting_tag == "unr2-inner");
  CHECK(b2.torus.shape == "(q+1)(q-1)");

  const CatalogEntry& b4 = find_entry(cat, "2B-C", 4, "d=1");
  AffineDiagram expect_b4(4, {"v0+v1", "v2", "v3", "v4"}, {0},
                          {{0, 1, 2, 0}, {1, 2, 1, -1}, {2, 3, 2, 2}});
  CHECK(b4.relative == expect_b4);
  CHECK(b4.iwahori_params_twice == std::vector<long>({4, 2, 2, 2}));
  CHECK(b4.torus.shape == "(q+1)(q-1)^3");

  const CatalogEntry& c3 = find_entry(cat, "2C-B", 3, "sc");
  AffineDiagram expect_c3(2, {"v0+v2", "v1"}, {0}, {{0, 1, 4, 0}});
  CHECK(c3.relative == expect_c3);
  CHECK(c3.iwahori_params_twice == std::vector<long>({4, 2}));
  CHECK(c3.torus.shape == "(q^2-1)");

  const CatalogEntry& c4 = find_entry(cat, "2C-B", 4, "sc");
  AffineDiagram expect_c4(2, {"v0+v3", "v1+v2"}, {0}, {{0, 1, 4, 1}});
  CHECK(c4.relative == expect_c4);
  CHECK(c4.iwahori_params_twice == std::vector<long>({4, 6}));
  CHECK(c4.torus.shape == "(q^2-1)(q+1)");

  const CatalogEntry& c5 = find_entry(cat, "2C-B", 5, "ad");
  CHECK(c5.iwahori_params_twice == std::vector<long>({4, 4, 2}));
  CHECK(c5.torus.shape == "(q^2-1)^2");
  CHECK(c5.omega.order == 2);
  CHECK(c5.omega.element_perms[1] == identity_permutation(3));

  // The companion of a twisted entry folds to the same parameter string.
  for (const auto& e : cat.entries) {
    INFO(e.id());
    CHECK(e.iwahori_params_twice == e.companion.iwahori_params_twice);
  }
}

TEST_CASE("exceptional family entries") {
  const Catalog& cat = builtin_catalog();
  auto f4 = match_entries(cat, "F4^I");
  REQUIRE(f4.size() == 2);
  CHECK(f4[0]->isogeny == "sc");
  CHECK(f4[1]->isogeny == "ad");
  CHECK(f4[0]->dim_g == 78);
  CHECK(f4[0]->rank_nr == 4);
  CHECK(f4[0]->dual.fixed_desc == "F4(C)");
  CHECK(f4[0]->dual.a == 26);
  CHECK(f4[0]->dual.fixed_exponents == std::vector<int>({1, 5, 7, 11}));
  CHECK(f4[0]->omega.order == 1);
  CHECK(f4[0]->companion.name == "F4");
  CHECK(f4[0]->local.diagram.find_edge(2, 3)->arrow_to == 2);
  CHECK(f4[0]->companion.local.diagram.find_edge(2, 3)->arrow_to == 3);

  auto g2 = match_entries(cat, "g2");  // alias
  REQUIRE(g2.size() == 2);
  CHECK(g2[0]->r_tag == "3|6");
  CHECK(g2[0]->dim_g == 28);
  CHECK(g2[0]->dual.fixed_desc == "G2(C)");
  CHECK(g2[0]->dual.a == 14);
  CHECK(g2[0]->dual.fixed_exponents == std::vector<int>({1, 5}));
  CHECK(g2[0]->local.diagram.find_edge(1, 2)->bond == 3);
  CHECK(g2[0]->local.diagram.find_edge(1, 2)->arrow_to == 1);
  CHECK(g2[0]->companion.local.diagram.find_edge(1, 2)->arrow_to == 2);
}

TEST_CASE("every entry passes the lattice omega recomputation") {
  const Catalog& cat = builtin_catalog();
  for (const auto& e : cat.entries) {
    INFO(e.id());
    CHECK(verify_entry_omega(e).empty());
  }
}

TEST_CASE("structural checks notice corrupted entries") {
  CatalogEntry e = find_entry(builtin_catalog(), "B-C", 2, "ad");
  CHECK(entry_structural_problems(e).empty());

  {
    CatalogEntry bad = e;
    bad.dual.a += 1;
    CHECK_FALSE(entry_structural_problems(bad).empty());
  }
  {
    CatalogEntry bad = e;
    bad.omega.order = 4;
    CHECK_FALSE(entry_structural_problems(bad).empty());
  }
  {
    CatalogEntry bad = e;
    bad.omega.element_perms[1] = {2, 1, 0};  // moves a special to a plain node
    CHECK_FALSE(entry_structural_problems(bad).empty());
  }
  {
    CatalogEntry bad = e;
    bad.iwahori_params_twice[0] = 4;
    CHECK_FALSE(entry_structural_problems(bad).empty());
  }
  {
    CatalogEntry bad = e;
    bad.relative = AffineDiagram(3, {"v0", "v1", "v2"}, {0, 1},
                                 {{0, 2, 2, 2}, {1, 2, 2, 2}});
    CHECK_FALSE(entry_structural_problems(bad).empty());
  }
  {
    CatalogEntry bad = e;
    bad.torus = catalog_detail::torus_product(3, 0, 0);
    CHECK_FALSE(entry_structural_problems(bad).empty());
  }
  {
    CatalogEntry bad = e;
    bad.omega.order = 1;
    bad.omega.invariants.clear();
    bad.omega.element_perms = {identity_permutation(3)};
    bad.dual.center_fixed_order = 1;
    bad.companion.omega = bad.omega;
    // Structurally coherent, but the lattice recomputation disagrees.
    CHECK(entry_structural_problems(bad).empty());
    CHECK_FALSE(verify_entry_omega(bad).empty());
  }
}

TEST_CASE("JSON round-trip preserves every entry") {
  const Catalog& cat = builtin_catalog();
  std::string json = catalog_to_json(cat);
  Catalog back = catalog_from_json(json);
  CHECK(back.version == cat.version);
  REQUIRE(back.entries.size() == cat.entries.size());
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    INFO(cat.entries[i].id());
    CHECK(back.entries[i] == cat.entries[i]);
  }
}

TEST_CASE("shipped catalog file matches the built-in tables byte for byte") {
  std::string json = catalog_to_json(builtin_catalog());
  std::string file = read_file(std::string(UNILLC_SOURCE_DIR) +
                               "/data/catalog.v1.json");
  CHECK(json == file);
  std::string sumfile = read_file(std::string(UNILLC_SOURCE_DIR) +
                                  "/data/catalog.v1.sha256");
  CHECK(sumfile == sha256_hex(json) + "  catalog.v1.json\n");
}

TEST_CASE("malformed catalog JSON is rejected") {
  CHECK_THROWS_AS(catalog_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_from_json("{\"format\":\"other\"}"),
                  std::invalid_argument);
  // Corrupt one stored relative diagram: self-checks must fire.
  std::string json = catalog_to_json(builtin_catalog());
  auto pos = json.find("edge 0 2 2 ->0");
  REQUIRE(pos != std::string::npos);
  json.replace(pos, 14, "edge 0 2 2 ->2");
  CHECK_THROWS_AS(catalog_from_json(json), std::invalid_argument);
}

TEST_CASE("entry token matching") {
  const Catalog& cat = builtin_catalog();
  CHECK(match_entries(cat, "B-C_2").size() == 3);
  CHECK(match_entries(cat, "bc_2").size() == 3);
  CHECK(match_entries(cat, "2B-C_2").size() == 3);
  CHECK(match_entries(cat, "2bc_2").size() == 3);
  CHECK(match_entries(cat, "C-B").size() == 21);
  CHECK(match_entries(cat, "B-C_2", std::string("ad")).size() == 1);
  CHECK(match_entries(cat, "B-C_2", std::string("d=4")).size() == 1);
  CHECK(match_entries(cat, "C-B_4", std::string("so")).size() == 1);
  CHECK_THROWS_AS(match_entries(cat, "B-C_9"), std::invalid_argument);
  CHECK_THROWS_AS(match_entries(cat, "X-Y_2"), std::invalid_argument);
  CHECK_THROWS_AS(find_entry(cat, "B-C", 2, "d=3"), std::invalid_argument);
}

TEST_CASE("facet transfer between main and companion") {
  const CatalogEntry& e = find_entry(builtin_catalog(), "C-B", 3, "ad");
  Facet f = {0, 2};
  CHECK(transfer_facet(e, f) == f);
  CHECK_THROWS_AS(transfer_facet(e, Facet{0, 1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(transfer_facet(e, Facet{5}), std::invalid_argument);
}

TEST_CASE("named root data match the frozen lattice conventions") {
  // d-tag: coroot lattice extended by d times the first fundamental coweight.
  BasedRootDatum rd = named_root_datum('A', 3, "d=2");
  CHECK(rd.class_group().order() == 2);
  CHECK(named_root_datum('A', 3, "d=1").class_group().order() == 4);
  CHECK(named_root_datum('A', 3, "d=4").class_group().is_trivial());
  CHECK(named_root_datum('D', 4, "so").class_group().order() == 2);
  CHECK(named_root_datum('D', 4, "sc").class_group().is_trivial());
  CHECK(named_root_datum('D', 4, "ad").class_group().order() == 4);
  CHECK(named_root_datum('C', 1, "sc").class_group().is_trivial());
  CHECK(named_root_datum('C', 1, "ad").class_group().order() == 2);
  CHECK_THROWS_AS(named_root_datum('A', 3, "nonsense"),
                  std::invalid_argument);
}
