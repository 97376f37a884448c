#include <doctest.h>

#include "ggkit/bijections.hpp"
#include "ggkit/verifier.hpp"

using namespace ggkit;

namespace {

Overpartition op(const char* s) { return parse_overpartition(s); }

const ClassParams k4i3{4, 3};

void check_phi_step(const char* before, const char* after, int p, int sub) {
  CAPTURE(before);
  auto a = parse_rows(before), b = parse_rows(after);
  CHECK(classify_F(a, p).sub == sub);
  BijectionTrace tr;
  auto got = phi_p(a, p, k4i3, &tr);
  CHECK(got == b);
  CHECK(got.base.weight() == a.base.weight() + 2);
  CHECK(tr.total_delta() == 2);
  CHECK(psi_p(b, p, k4i3) == a);
  CHECK(gg_mark(got.base) == got);
}

void check_theta_step(const char* before, const char* after, int p, int gain) {
  CAPTURE(before);
  auto a = parse_rows(before), b = parse_rows(after);
  auto got = theta_p(a, p, k4i3);
  CHECK(got == b);
  CHECK(got.base.weight() == a.base.weight() + gain);
  CHECK(lambda_p(b, p, k4i3) == a);
}

}  // namespace

TEST_CASE("phi steps on the printed examples") {
  auto a = parse_rows("1~,3,3,6/2,4,7~/6");
  CHECK(a.base.weight() == 32);
  check_phi_step("1~,3,3,6/2,4,7~/6", "1~,3,5~,6~/2,4,7~/6", 3, 1);
  check_phi_step("1~,4~,7,10,13~/2,4,8,11~/4,8", "1~,4~,8,10~,13~/2,4,8,11~/4,9~", 3, 2);
  check_phi_step("1~,4~,7,7,8~,13~/2,4,8,14/4,14", "1~,4~,7,7,10,13/2,4,8,14/4,14", 5, 3);
  check_phi_step("1~,3,3,6,10~,13~/2,4,7~,10,14/4,10,14", "1~,3,3,6,10,13/2,4,7~,10,14/4,12,14", 5, 3);
  check_phi_step("1~,4,5,6~,10/2,6,10/7~,10", "1~,4,5,7~,10~/2,6,10/8,10", 4, 4);
  check_phi_step("1~,3,6~,9~,12/2,6,10,13~/7~,14", "1~,3,6,9,12/2,7~,10,13~/8,14", 3, 4);
  CHECK(classify_F(parse_rows("1~,3,5~,6~/2,4,7~/6"), 3).in_f_bar);
}

TEST_CASE("theta steps on the printed examples") {
  auto mu = parse_rows("1~,6,10,14/2,8,12/8");
  CHECK(mu.base == op("1~,2,6,8,8,10,12,14"));
  CHECK(mu.base.weight() == 61);
  check_theta_step("1~,6,10,14/2,8,12/8", "2,7~,10,14/2,8,12/8", 1, 2);
  CHECK(parse_rows("2,7~,10,14/2,8,12/8").base.weight() == 63);
  check_theta_step("1~,4,8,12/2,5~,9~,12/6,12", "1~,4,8,12/2,5~,10,13~/6,12", 3, 2);
  check_theta_step("1~,4,7~,10/2,6,11~/6,12", "1~,4,7~,10/2,6,12/6,12", 4, 1);
}

TEST_CASE("chains are stepwise compositions") {
  auto lam = parse_rows("1~,3,3,6/2,4,7~/6");
  BijectionTrace tr;
  auto out = phi_chain(lam, 3, k4i3, &tr);
  CHECK(tr.steps.size() == 2);
  CHECK(out.base.weight() == lam.base.weight() + 2 * 4 - 2 * 3 + 2);
  CHECK(tr.total_delta() == out.base.weight() - lam.base.weight());
  auto one = phi_p(lam, 3, k4i3);
  CHECK(out == phi_p(one, 4, k4i3));
  CHECK(psi_chain(out, 3, k4i3) == lam);

  // a chain starting at the last position is one step
  auto last = parse_rows("1~,4,7~,10/2,6,11~/6,12");
  CHECK(theta_chain(last, 4, k4i3) == theta_p(last, 4, k4i3));
}

TEST_CASE("full maps on objects with nothing to remove") {
  auto g = parse_rows("1~,6,10,14/2,8,12/8");
  auto [tau, mu] = phi_full(g, k4i3);
  CHECK(tau.empty());
  CHECK(mu == g);
  CHECK(psi_full({}, g, k4i3) == g);

  auto e = parse_rows("2,6,10/4");
  auto [eta, nu] = theta_full(e, ClassParams{3, 2});
  CHECK(eta.empty());
  CHECK(nu == e);
}

TEST_CASE("one removable part gives a single signed part") {
  // 3 is the only plain odd part, first-row position 2 of 3
  auto lam = parse_rows("2,3,6");
  REQUIRE(row_counts(lam) == std::vector<int>{3});
  auto [tau, mu] = phi_full(lam, ClassParams{2, 2});
  CHECK(tau == SignedParts{-2 * (3 - 2 + 1)});
  CHECK(mu.base.weight() - 2 * (3 - 2 + 1) == lam.base.weight());
  CHECK(psi_full(tau, mu, ClassParams{2, 2}) == lam);
}

TEST_CASE("signed part validation") {
  CHECK(valid_even_signed({-4, -2}, 2));
  CHECK_FALSE(valid_even_signed({-6}, 2));
  CHECK_FALSE(valid_even_signed({-2, -4}, 3));
  CHECK(valid_odd_signed({-3, -1}, 2));
  CHECK_FALSE(valid_odd_signed({-5}, 2));
  auto mu = parse_rows("2,6,10/4");
  CHECK_THROWS_AS(psi_full({-8}, mu, ClassParams{3, 2}), BijectionError);
  CHECK_THROWS_AS(lambda_full({-7}, mu, ClassParams{3, 2}), BijectionError);
}

TEST_CASE("maps reject inputs outside their domain") {
  auto g = parse_rows("2,6,10/4");
  CHECK_THROWS_AS(phi_p(g, 2, ClassParams{3, 2}), BijectionError);
  CHECK_THROWS_AS(theta_p(g, 1, ClassParams{3, 2}), BijectionError);
  auto lam = parse_rows("1~,3,3,6/2,4,7~/6");
  CHECK_THROWS_AS(phi_p(lam, 3, ClassParams{3, 3}), BijectionError);
}

TEST_CASE("smallest part toggles") {
  CHECK(fh_toggle(op("3~,4"), 3, 2) == op("3,4"));
  CHECK(fh_toggle(op("4,4"), 3, 2) == op("4~,4"));
  auto low = fh_toggle(op("3~,4,6"), 3, 1);
  CHECK(low == op("1,2,4"));
  CHECK(low.weight() == 13 - 2 * 3);
  CHECK(satisfies_family(low, FamilySpec(Family::H, 3, 3)));
  CHECK(fh_untoggle(low, 3, 1) == op("3~,4,6"));
  CHECK(fh_untoggle(op("3,4"), 3, 2) == op("3~,4"));
  CHECK_THROWS_AS(fh_toggle(op("3,4"), 3, 2), BijectionError);
}

TEST_CASE("halving and doubling") {
  CHECK(halve(op("2,2,4,4,4,6,8,10,10,12,12,12")) == parse_partition("1,1,2,2,2,3,4,5,5,6,6,6"));
  CHECK(halve(Overpartition{}) == Partition{});
  CHECK(double_parts(Partition{}) == Overpartition{});
  CHECK_THROWS_AS(halve(op("2,3")), BijectionError);
  CHECK_THROWS_AS(halve(op("2~")), BijectionError);
  for_each_partition_upto(12, [&](const std::vector<int>& v, int w) {
    Partition eta{v};
    auto nu = double_parts(eta);
    CHECK(nu.weight() == 2 * w);
    CHECK(halve(nu) == eta);
    CHECK(double_parts(halve(nu)) == nu);
    CHECK(gg_mark(nu).marks == gordon_mark(eta).marks);
  });
}

TEST_CASE("trace json lists each step") {
  BijectionTrace tr;
  phi_chain(parse_rows("1~,3,3,6/2,4,7~/6"), 3, k4i3, &tr);
  auto j = to_json(tr);
  REQUIRE(j.is_object());
  CHECK(j["steps"].size() == 2);
  CHECK(j["total_delta"] == 4);
}

TEST_CASE("exhaustive sweep at small weight") {
  for (int k = 2; k <= 4; ++k)
    for (int i = 1; i <= k; ++i) {
      CAPTURE(k);
      CAPTURE(i);
      auto rep = verify_bijections(k, i, 12);
      CHECK(rep.pass);
    }
  CHECK(verify_bijections(3, 2, 0).pass);
}

TEST_CASE("printed examples bundle") { CHECK(verify_worked_examples().pass); }
