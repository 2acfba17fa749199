#include <catch2/catch_amalgamated.hpp>

#include "critweb/web.hpp"
#include "helpers.hpp"

using namespace critweb;
using testutil::ang;

namespace {

struct Built {
  AddressSystem sys;
  std::vector<Angle> gamma;
  Web web;

  explicit Built(const CriticalPortrait& p, std::optional<std::vector<Angle>> g = {})
      : sys(AddressSystem::build(p)),
        gamma(g ? *g : generate_special_arguments(sys)),
        web(build_web(sys, build_fatou_classes(sys, gamma), build_landing_classes(sys, gamma))) {}
};

std::vector<std::vector<Angle>> part_sets(const MarkedPartition& mp) {
  std::vector<std::vector<Angle>> out;
  for (const Part& p : mp.parts) out.push_back(p.angles);
  return out;
}

}  // namespace

TEST_CASE("web of the two-pair cubic") {
  Built b(testutil::cubic_two_pairs());
  CHECK(b.web.vertex_count() == 9);
  CHECK(b.web.rays.size() == 7);
  CHECK(b.web.internal_edges.size() == 6);

  std::vector<Angle> ray_angles;
  for (const auto& r : b.web.rays) ray_angles.push_back(r.angle);
  CHECK(ray_angles == std::vector<Angle>{Angle(), ang(1, 12), ang(1, 4), ang(13, 36),
                                         ang(7, 12), ang(3, 4), ang(31, 36)});
  CHECK(std::is_sorted(ray_angles.begin(), ray_angles.end()));

  const Web::Ray* zero = b.web.ray_at(Angle());
  REQUIRE(zero != nullptr);
  CHECK(zero->preferred);
  CHECK(b.web.ray_at(ang(1, 4))->landing_part == b.web.ray_at(ang(3, 4))->landing_part);

  int preferred_edges = 0;
  for (const auto& e : b.web.internal_edges) preferred_edges += e.preferred;
  CHECK(preferred_edges == 2);
}

TEST_CASE("web of the fixed triangle without special arguments") {
  Built b(testutil::cubic_fixed_triangle(), std::vector<Angle>{});
  CHECK(b.web.vertex_count() == 5);
  CHECK(b.web.rays.size() == 3);
  CHECK(b.web.internal_edges.size() == 3);
}

TEST_CASE("web map") {
  Built b(testutil::cubic_two_pairs());
  WebMap m = build_web_map(b.web);

  int j_13_36 = b.web.landing.part_index_of(ang(13, 36));
  int j_1_12 = b.web.landing.part_index_of(ang(1, 12));
  CHECK(m.landing_image[j_13_36] == j_1_12);

  int f_first = b.web.fatou.part_index_of(ang(1, 4));
  int f_second = b.web.fatou.part_index_of(ang(3, 4));
  CHECK(m.fatou_image[f_first] == f_second);
  CHECK(m.fatou_image[f_second] == f_first);
}

TEST_CASE("edge classification") {
  Built b(testutil::cubic_two_pairs());
  EdgeClassification cls = classify_edges(b.web);
  CHECK(cls.rays.at(ang(1, 4)) == EdgeClass::periodic);
  CHECK(cls.rays.at(ang(3, 4)) == EdgeClass::periodic);
  CHECK(cls.rays.at(Angle()) == EdgeClass::periodic);
  CHECK(cls.rays.at(ang(13, 36)) == EdgeClass::preperiodic);
  CHECK(cls.internal_edges.at(ang(7, 12)) == EdgeClass::preperiodic);
  CHECK(cls.internal_edges.at(ang(1, 4)) == EdgeClass::periodic);
}

TEST_CASE("incompatible families are an obstruction") {
  MarkedPartition bad_f = make_partition({{Angle(), ang(1, 2)}}, PartRole::fatou);
  bad_f.parts[0].preferred = Angle();
  MarkedPartition bad_j = make_partition({{ang(1, 4), ang(3, 4)}}, PartRole::landing);
  AddressSystem sys = AddressSystem::build(testutil::cubic_two_pairs());
  try {
    build_web(sys, bad_f, bad_j);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(e.code == validation_error::Code::obstruction);
  }
}

TEST_CASE("lifting the pair class") {
  AddressSystem sys = AddressSystem::build(testutil::cubic_two_pairs());
  MarkedPartition base = make_partition({{ang(1, 4), ang(3, 4)}}, PartRole::landing);
  MarkedPartition lifted = lift_classes(sys, base);
  CHECK(lifted.ground() == std::vector<Angle>{ang(1, 12), ang(1, 4), ang(5, 12), ang(7, 12),
                                              ang(3, 4), ang(11, 12)});
  CHECK(part_sets(lifted) == std::vector<std::vector<Angle>>{{ang(1, 12), ang(11, 12)},
                                                             {ang(1, 4), ang(3, 4)},
                                                             {ang(5, 12), ang(7, 12)}});
}

TEST_CASE("lifting singletons and the empty partition") {
  AddressSystem tri = AddressSystem::build(testutil::cubic_fixed_triangle());
  MarkedPartition base = make_partition({{Angle()}}, PartRole::landing);
  MarkedPartition lifted = lift_classes(tri, base);
  CHECK(part_sets(lifted) ==
        std::vector<std::vector<Angle>>{{Angle()}, {ang(1, 3)}, {ang(2, 3)}});

  CHECK(lift_classes(tri, MarkedPartition{}).parts.empty());
}

TEST_CASE("lift refines the landing classes on the marked set") {
  testutil::PortraitGenerator gen(99);
  std::vector<CriticalPortrait> portraits = {testutil::cubic_two_pairs(),
                                             testutil::quadratic_julia_pair()};
  for (int i = 0; i < 4; ++i) portraits.push_back(gen.next());
  for (const CriticalPortrait& p : portraits) {
    AddressSystem sys = AddressSystem::build(p);
    std::vector<Angle> g = generate_special_arguments(sys);
    MarkedPartition base = build_landing_classes(sys, g);
    MarkedPartition lifted = lift_classes(sys, base);

    CHECK(lifted.ground().size() == base.ground().size() * sys.degree());

    std::vector<Angle> marked = base.ground();
    for (const Part& part : lifted.parts) {
      int target = -1;
      for (const Angle& a : part.angles) {
        if (!std::binary_search(marked.begin(), marked.end(), a)) continue;
        int idx = base.part_index_of(a);
        if (target < 0) target = idx;
        CHECK(idx == target);
      }
    }
    // Lifted parts stay pairwise unlinked.
    for (std::size_t i = 0; i < lifted.parts.size(); ++i) {
      for (std::size_t k = i + 1; k < lifted.parts.size(); ++k) {
        CHECK(unlinked(lifted.parts[i].angles, lifted.parts[k].angles));
      }
    }
  }
}

TEST_CASE("iterated lifting grows by the degree") {
  AddressSystem sys = AddressSystem::build(testutil::cubic_two_pairs());
  MarkedPartition mp = build_landing_classes(sys, generate_special_arguments(sys));
  std::size_t base = mp.ground().size();
  mp = lift_classes(sys, mp);
  CHECK(mp.ground().size() == base * 3);
  mp = lift_classes(sys, mp);
  CHECK(mp.ground().size() == base * 9);
}

TEST_CASE("pullback arcs") {
  AddressSystem sys = AddressSystem::build(testutil::cubic_two_pairs());

  PullbackResult r0 = pullback_arcs(sys, ang(1, 4), 0);
  CHECK(r0.total_length == Rational(1));
  CHECK(r0.length_bound == Rational(1));

  PullbackResult r1 = pullback_arcs(sys, ang(1, 4), 1);
  CHECK(r1.total_length == Rational(1, 3));
  CHECK(r1.arcs == sys.piece(sys.address_left(ang(1, 4))).arcs);

  PullbackResult r2 = pullback_arcs(sys, ang(1, 4), 2);
  CHECK(r2.total_length == Rational(1, 9));
  REQUIRE(r2.arcs.size() == 2);
  CHECK(r2.arcs[0].contains(ang(1, 4)));
  CHECK(r2.arcs[1].contains(ang(3, 4)));

  Rational expected(1);
  for (int n = 0; n <= 12; ++n) {
    PullbackResult r = pullback_arcs(sys, ang(1, 4), n);
    CHECK(r.total_length == expected);
    CHECK(r.length_bound == expected);
    for (const Arc& a : r.arcs) CHECK(a.length() <= expected);
    expected /= Rational(3);
  }
  CHECK_THROWS_AS(pullback_arcs(sys, ang(1, 4), -1), invalid_input);
}

TEST_CASE("levy diagnostic") {
  AddressSystem sys = AddressSystem::build(testutil::cubic_two_pairs());
  std::vector<Angle> g = generate_special_arguments(sys);
  MarkedPartition canonical = build_landing_classes(sys, g);
  CHECK(check_levy(sys, canonical, g).clean());

  // Splitting the pair class produces exactly one witness.
  {
    std::vector<std::vector<Angle>> parts;
    for (const Part& p : canonical.parts) {
      if (p.angles == std::vector<Angle>{ang(1, 4), ang(3, 4)}) {
        parts.push_back({ang(1, 4)});
        parts.push_back({ang(3, 4)});
      } else {
        parts.push_back(p.angles);
      }
    }
    MarkedPartition split = make_partition(parts, PartRole::landing);
    LevyReport report = check_levy(sys, split, g);
    REQUIRE(report.witnesses.size() == 1);
    CHECK(report.witnesses[0].first == ang(1, 4));
    CHECK(report.witnesses[0].second == ang(3, 4));
  }

  // Candidate must partition the marked set.
  MarkedPartition bogus = make_partition({{ang(1, 4), ang(3, 4)}}, PartRole::landing);
  CHECK_THROWS_AS(check_levy(sys, bogus, g), invalid_input);
}

TEST_CASE("levy needs periodic witnesses") {
  // Every marked angle except 0 is strictly preperiodic, so even the fully
  // split partition is clean.
  AddressSystem sys =
      AddressSystem::build(CriticalPortrait::make({{ang(1, 4), ang(3, 4)}}, {}));
  std::vector<Angle> g = generate_special_arguments(sys);
  REQUIRE(g.empty());
  std::vector<std::vector<Angle>> singletons;
  for (const Angle& a : marked_set(sys, g)) singletons.push_back({a});
  CHECK(check_levy(sys, make_partition(singletons, PartRole::landing), g).clean());
}

TEST_CASE("levy catches injected merges on generated portraits") {
  testutil::PortraitGenerator gen(1234);
  int tested = 0;
  for (int i = 0; i < 30 && tested < 5; ++i) {
    AddressSystem sys = AddressSystem::build(gen.next());
    std::vector<Angle> g = generate_special_arguments(sys);
    MarkedPartition canonical = build_landing_classes(sys, g);
    CHECK(check_levy(sys, canonical, g).clean());

    // Split the first part holding two periodic angles, if any.
    for (std::size_t pi = 0; pi < canonical.parts.size(); ++pi) {
      std::vector<Angle> periodic;
      for (const Angle& a : canonical.parts[pi].angles) {
        if (is_periodic(a, sys.degree())) periodic.push_back(a);
      }
      if (periodic.size() < 2) continue;
      std::vector<std::vector<Angle>> parts;
      for (std::size_t k = 0; k < canonical.parts.size(); ++k) {
        if (k == pi) {
          parts.push_back({periodic[0]});
          std::vector<Angle> rest = canonical.parts[k].angles;
          rest.erase(std::find(rest.begin(), rest.end(), periodic[0]));
          parts.push_back(rest);
        } else {
          parts.push_back(canonical.parts[k].angles);
        }
      }
      LevyReport report = check_levy(sys, make_partition(parts, PartRole::landing), g);
      CHECK_FALSE(report.clean());
      ++tested;
      break;
    }
  }
}
