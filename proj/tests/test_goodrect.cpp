#include <doctest.h>

#include "dhl/error.hpp"
#include "dhl/gallery.hpp"
#include "dhl/goodrect.hpp"

using namespace dhl;

namespace {
const ScalarKind Q = ScalarKind::rational();
const GoodnessConfig cfg;

GridFunction constant(const SlopedRect& W, const Rational& v) {
  return GridFunction::from_function(W, Q, [&](SlopedCell) { return Scalar(v); });
}

Rational seven_pow(long e) {
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= 7;
  return r;
}
}  // namespace

TEST_SUITE("goodrect") {
  TEST_CASE("is_good") {
    const SlopedRect W = SlopedRect::centered(12);
    auto zero = constant(W, 0);
    CHECK(is_good(zero, {0, 9, 0, 9}, cfg));
    // a = 11 b: aspect violated whatever the values
    CHECK_FALSE(is_good(zero, {-22, 21, 0, 3}, cfg));
    CHECK_THROWS_AS(is_good(zero, {-40, 39, 0, 3}, cfg), precondition_error);
    // threshold probe: a + b = 3 for the doubled-side-3 square
    const SlopedRect R{0, 2, 0, 2};
    GridFunction U = zero;
    U.set(SlopedCell{1, 1}, Scalar(seven_pow(3)));
    CHECK(is_good(U, R, cfg));
    U.set(SlopedCell{1, 1}, Scalar(seven_pow(3) + 1));
    CHECK_FALSE(is_good(U, R, cfg));
  }

  TEST_CASE("exponent map") {
    auto U = GridFunction::from_function(SlopedRect::centered(3), Q, [](SlopedCell p) {
      return Scalar(Rational(p.s2 * p.s2 * p.s2 + p.k2, 3));
    });
    auto em = exponent_map(U, 7);
    for (SlopedCell p : U.sloped_cells()) {
      long e = 0;
      Rational pw = 1, a = abs(U.at(p).as_rational());
      while (a > pw) pw *= 7, ++e;
      CHECK(em.at(p.s2, p.k2) == e);
    }
  }

  TEST_CASE("dilate") {
    const SlopedRect R{3, 8, -2, 3};
    CHECK(dilate(R, 1) == R);
    const SlopedRect unit{0, 0, 0, 0};
    CHECK(dilate(unit, 3) == SlopedRect{-1, 1, -1, 1});
    CHECK(dilate(R, 9).contains(dilate(R, 3)));
    CHECK_THROWS_AS(dilate(R, 2), precondition_error);
  }

  TEST_CASE("expansion on U = 0") {
    auto zero = constant(SlopedRect::centered(30), 0);
    auto res = expand_good(zero, {-8, 9, -4, 5}, cfg);
    CHECK(res.hypothesis_ok);
    CHECK(res.all_good);
    for (const auto& row : res.rows) CHECK(row.good);
    CHECK_FALSE(res.rows.empty());
  }

  TEST_CASE("expansion with a dense bad block") {
    const SlopedRect W = SlopedRect::centered(30);
    const SlopedRect R{-8, 9, -4, 5};
    auto U = GridFunction::from_function(W, Q, [&](SlopedCell p) {
      return Scalar(p.k2 > R.b2 && p.k2 <= R.b2 + 6 ? Rational(2) : Rational(0));
    });
    auto res = expand_good(U, R, cfg);
    CHECK_FALSE(res.hypothesis_ok);
    long expect = 0;
    const SlopedRect R3{R.a1, R.a2, R.b1, R.b1 + 3 * (R.b2 - R.b1)};
    for (long k = R3.b1; k <= R3.b2; ++k)
      for (long s = R3.line_first(k); s <= R3.a2; s += 2)
        if (k > R.b2 && k <= R.b2 + 6) ++expect;
    CHECK(res.bad_cells == expect);
  }

  TEST_CASE("expansion on chelkak34 in its bounded half") {
    // |u| <= 1 where m <= 0, i.e. k >= s in sloped coordinates
    auto U = to_sloped(chelkak34(60));
    const SlopedRect R{-40, -21, 10, 15};
    auto res = expand_good(U, R, cfg);
    CHECK(res.hypothesis_ok);
    CHECK(res.all_good);
  }

  TEST_CASE("maximal squares: trivial families") {
    const SlopedRect amb = SlopedRect::centered(6);
    auto zero = constant(amb, 0);
    auto fam = maximal_good_squares(zero, amb, cfg, SlopedRect::centered(1));
    REQUIRE(fam.squares.size() == 1);
    CHECK(fam.squares[0] == amb);
    auto huge = constant(amb, seven_pow(200));
    CHECK(maximal_good_squares(huge, amb, cfg, SlopedRect::centered(1)).squares.empty());
  }

  TEST_CASE("maximal squares on a plateau are pairwise incomparable") {
    const SlopedRect amb = SlopedRect::centered(8);
    auto U = GridFunction::from_function(amb, Q, [](SlopedCell p) {
      return Scalar(std::abs(p.s2 - 5) + std::abs(p.k2 + 3) <= 1 ? seven_pow(40) : Rational(1));
    });
    auto fam = maximal_good_squares(U, amb, cfg, SlopedRect::centered(2));
    REQUIRE(fam.squares.size() >= 2);
    for (std::size_t i = 0; i < fam.squares.size(); ++i) {
      CHECK(is_good(U, fam.squares[i], cfg));
      for (std::size_t j = 0; j < fam.squares.size(); ++j)
        if (i != j) CHECK_FALSE(fam.squares[i].contains(fam.squares[j]));
    }
  }

  TEST_CASE("vitali selection") {
    SquareFamily one{SlopedRect::centered(5), {{0, 4, 0, 4}}};
    CHECK(vitali_select(one).squares == one.squares);
    SquareFamily two{SlopedRect::centered(5), {{-8, -4, 0, 4}, {2, 6, 0, 4}}};
    CHECK(vitali_select(two).squares.size() == 2);
    SquareFamily nested{SlopedRect::centered(5), {{0, 2, 0, 2}, {-4, 6, -4, 6}}};
    auto sel = vitali_select(nested);
    REQUIRE(sel.squares.size() == 1);
    CHECK(sel.squares[0] == SlopedRect{-4, 6, -4, 6});
    SplitMix64 rng(14);
    for (int i = 0; i < 200; ++i) {
      auto fam = random_square_family(rng, SlopedRect::centered(8), 25, 10);
      auto chk = verify_vitali(fam, vitali_select(fam));
      CHECK(chk.disjoint);
      CHECK(chk.covers);
    }
    // a broken selection is caught
    SquareFamily bad{two.ambient, {two.squares[0]}};
    CHECK_FALSE(verify_vitali(two, bad).covers);
  }

  TEST_CASE("good square search") {
    auto zero = constant(SlopedRect::centered(100), 0);
    auto r = find_good_square(zero, 100, cfg);
    REQUIRE(r.found);
    REQUIRE(r.square);
    CHECK(r.square->contains(SlopedRect::centered(1)));
    CHECK(r.bad_QK == 0);

    // huge on most of Q_K
    auto U = GridFunction::from_function(SlopedRect::centered(30), Q, [](SlopedCell p) {
      return Scalar(p.k2 > -50 ? seven_pow(40) : Rational(0));
    });
    auto b = find_good_square(U, 30, cfg);
    CHECK_FALSE(b.found);
    CHECK_FALSE(b.hypothesis_ok);
    CHECK(b.cells_QK == SlopedRect::centered(30).cell_count());
    CHECK(10 * b.bad_QK > 9 * b.cells_QK);

    // chelkak34 shifted down so that Q_K sits inside its bounded half m <= 0
    const long K = 20;
    auto shifted = GridFunction::from_function(Square{{0, 0}, 2 * K}, chelkak_kind(),
                                               [](Cell c) { return chelkak34_value(Cell{c.n, c.m - 4 * K - 1}); });
    auto C = find_good_square(to_sloped(shifted, SlopedRect::centered(K)), K, cfg);
    CHECK(C.found);
    CHECK(C.bad_QK == 0);
  }
}
