#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "skewgas/classical.hpp"
#include "skewgas/dd.hpp"
#include "skewgas/inner.hpp"
#include "skewgas/poly.hpp"
#include "skewgas/skewlinalg.hpp"
#include "skewgas/sop.hpp"

using skewgas::classical::Kind;
using skewgas::classical::WeightFamily;
using skewgas::moments::MomentEngine;
using skewgas::numeric::cdd;
using skewgas::numeric::dd;
using skewgas::poly::Polynomial;
using skewgas::sop::build_Q;
using skewgas::sop::c_factor;
using skewgas::sop::closed_form_alpha;
using skewgas::sop::recurrence_alpha_xi;

namespace {

dd D(const char* s) { return skewgas::numeric::from_string(s); }

double rel(dd got, dd want) {
  double w = std::fabs(want.hi);
  return std::fabs((got - want).hi) / (w > 0.0 ? w : 1.0);
}

const Kind kKinds[] = {Kind::gaussian, Kind::laguerre, Kind::jacobi,
                       Kind::gencauchy};

WeightFamily family_of(Kind kind) {
  switch (kind) {
    case Kind::gaussian:
      return WeightFamily::gaussian();
    case Kind::laguerre:
      return WeightFamily::laguerre(dd(0.5));
    case Kind::jacobi:
      return WeightFamily::jacobi(dd(0.5), dd(1.5));
    default:
      return WeightFamily::gencauchy(dd(25.0), dd(1.0));
  }
}

const MomentEngine& eng(Kind kind) {
  switch (kind) {
    case Kind::gaussian: {
      static MomentEngine e(WeightFamily::gaussian(), 6);
      return e;
    }
    case Kind::laguerre: {
      static MomentEngine e(WeightFamily::laguerre(dd(0.5)), 6);
      return e;
    }
    case Kind::jacobi: {
      static MomentEngine e(WeightFamily::jacobi(dd(0.5), dd(1.5)), 6);
      return e;
    }
    default: {
      static MomentEngine e(WeightFamily::gencauchy(dd(25.0), dd(1.0)), 6);
      return e;
    }
  }
}

// frozen reference values for alpha_j(X), xi_j(X); 42 significant digits
struct AlphaXiPin {
  Kind kind;
  int j;
  double X;
  const char* alpha;
  const char* xi;
};

const AlphaXiPin kAlphaXiPins[] = {
    {Kind::gaussian, 1, 0.5, "1.5", "1.5"},
    {Kind::gaussian, 2, 0.5, "1.04166666666666666666666666666666666666667",
     "1.04166666666666666666666666666666666666667"},
    {Kind::gaussian, 4, 0.5, "0.14724702380952380952380952380952380952381",
     "0.14724702380952380952380952380952380952381"},
    {Kind::gaussian, 6, 0.5, "0.00753582660266688044465822243600021377799156",
     "0.00753582660266688044465822243600021377799156"},
    {Kind::gaussian, 8, 0.5, "0.000194532764645043497556725069952583180096408",
     "0.000194532764645043497556725069952583180096408"},
    {Kind::gaussian, 1, 1.0, "3.0", "3.0"},
    {Kind::gaussian, 2, 1.0, "3.16666666666666666666666666666666666666667",
     "3.16666666666666666666666666666666666666667"},
    {Kind::gaussian, 4, 1.0, "0.803571428571428571428571428571428571428571",
     "0.803571428571428571428571428571428571428571"},
    {Kind::gaussian, 6, 1.0, "0.0641134893912671690449468227246005023782802",
     "0.0641134893912671690449468227246005023782802"},
    {Kind::gaussian, 8, 1.0, "0.00240434170229143774117319090864064409037954",
     "0.00240434170229143774117319090864064409037954"},
    {Kind::gaussian, 1, 2.0, "9.0", "9.0"},
    {Kind::gaussian, 2, 2.0, "19.1666666666666666666666666666666666666667",
     "19.1666666666666666666666666666666666666667"},
    {Kind::gaussian, 4, 2.0, "14.0226190476190476190476190476190476190476",
     "14.0226190476190476190476190476190476190476"},
    {Kind::gaussian, 6, 2.0, "2.5973313826091603869381647159424937202715",
     "2.5973313826091603869381647159424937202715"},
    {Kind::gaussian, 8, 2.0, "0.200516223941157803591666025528459390893253",
     "0.200516223941157803591666025528459390893253"},
    {Kind::laguerre, 1, 0.5, "0.333333333333333333333333333333333333333333",
     "0.333333333333333333333333333333333333333333"},
    {Kind::laguerre, 2, 0.5, "0.0238095238095238095238095238095238095238095",
     "0.0238095238095238095238095238095238095238095"},
    {Kind::laguerre, 4, 0.5, "0.000012025012025012025012025012025012025012025",
     "0.000012025012025012025012025012025012025012025"},
    {Kind::laguerre, 6, 0.5,
     "0.00000000091723966628619565309115270976445652265637",
     "0.00000000091723966628619565309115270976445652265637"},
    {Kind::laguerre, 8, 0.5, "1.95690319654846316157013293600541159467565e-14",
     "1.95690319654846316157013293600541159467565e-14"},
    {Kind::laguerre, 1, 1.0, "0.733333333333333333333333333333333333333333",
     "0.733333333333333333333333333333333333333333"},
    {Kind::laguerre, 2, 1.0, "0.0703703703703703703703703703703703703703704",
     "0.0703703703703703703703703703703703703703704"},
    {Kind::laguerre, 4, 1.0, "0.0000488799508407351544606446567230880956371152",
     "0.0000488799508407351544606446567230880956371152"},
    {Kind::laguerre, 6, 1.0,
     "0.00000000452222674444896667118889341111563333785556",
     "0.00000000452222674444896667118889341111563333785556"},
    {Kind::laguerre, 8, 1.0,
     "0.000000000000110855436382837637081352447447800020502154",
     "0.000000000000110855436382837637081352447447800020502154"},
    {Kind::laguerre, 1, 2.0, "2.33333333333333333333333333333333333333333",
     "2.33333333333333333333333333333333333333333"},
    {Kind::laguerre, 2, 2.0, "0.383597883597883597883597883597883597883598",
     "0.383597883597883597883597883597883597883598"},
    {Kind::laguerre, 4, 2.0, "0.00048939803841764626078351568547646979019528",
     "0.00048939803841764626078351568547646979019528"},
    {Kind::laguerre, 6, 2.0,
     "0.0000000659333058959576233152330257839128053880622",
     "0.0000000659333058959576233152330257839128053880622"},
    {Kind::laguerre, 8, 2.0,
     "0.00000000000212279887879374161754291328470936457170542",
     "0.00000000000212279887879374161754291328470936457170542"},
    {Kind::jacobi, 1, 0.5, "4.0", "8.0"},
    {Kind::jacobi, 2, 0.5, "16.0", "48.0"},
    {Kind::jacobi, 4, 0.5, "256.0", "1280.0"},
    {Kind::jacobi, 6, 0.5, "4096.0", "28672.0"},
    {Kind::jacobi, 8, 0.5, "65536.0", "589824.0"},
    {Kind::jacobi, 1, 1.0, "7.0", "14.0"},
    {Kind::jacobi, 2, 1.0, "36.6666666666666666666666666666666666666667",
     "110.0"},
    {Kind::jacobi, 4, 1.0, "798.0", "3990.0"},
    {Kind::jacobi, 6, 1.0, "15444.0", "108108.0"},
    {Kind::jacobi, 8, 1.0, "283616.666666666666666666666666666666666667",
     "2552550.0"},
    {Kind::jacobi, 1, 2.0, "19.0", "38.0"},
    {Kind::jacobi, 2, 2.0, "159.333333333333333333333333333333333333333",
     "478.0"},
    {Kind::jacobi, 4, 2.0, "6039.6", "30198.0"},
    {Kind::jacobi, 6, 2.0, "166452.0", "1165164.0"},
    {Kind::jacobi, 8, 2.0, "3965771.33333333333333333333333333333333333",
     "35691942.0"},
    {Kind::gencauchy, 1, 0.5, "23.4130209525522383179098132827572675844479",
     "21.4619358731728851247506621758608286190772"},
    {Kind::gencauchy, 2, 0.5, "239.327354311705530791255896058144187058265",
     "199.439461926421275659379913381786822548554"},
    {Kind::gencauchy, 4, 0.5, "5193.68897349104015769459488205788917675711",
     "3462.45931566069343846306325470525945117141"},
    {Kind::gencauchy, 6, 0.5, "20514.2793034292495874429738692158505619907",
     "10257.1396517146247937214869346079252809954"},
    {Kind::gencauchy, 8, 0.5, "14500.0483423723956326006659862891782595332",
     "4833.34944745746521086688866209639275317774"},
    {Kind::gencauchy, 1, 1.0, "24.8148196592655570452241587914064288283575",
     "22.7469180209934272914554788921225597593277"},
    {Kind::gencauchy, 2, 1.0, "268.296316968600593024125878417800640719785",
     "223.580264140500494186771565348167200599821"},
    {Kind::gencauchy, 4, 1.0, "6480.45190061007856654806869442562922869026",
     "4320.30126707338571103204579628375281912684"},
    {Kind::gencauchy, 6, 1.0, "28334.3857034658208834060871149018293574998",
     "14167.1928517329104417030435574509146787499"},
    {Kind::gencauchy, 8, 1.0, "22077.7665876168756041877126621030639459246",
     "7359.2555292056252013959042207010213153082"},
    {Kind::gencauchy, 1, 2.0, "30.4220144861188319544815408260030738039959",
     "27.8868466122755959582747457571694843203296"},
    {Kind::gencauchy, 2, 2.0, "390.130863574398912637325057994982913186702",
     "325.109052978665760531104214995819094322251"},
    {Kind::gencauchy, 4, 2.0, "12465.3707099061445379237597533476895475021",
     "8310.24713993742969194917316889845969833475"},
    {Kind::gencauchy, 6, 2.0, "68600.4863090611468674550785168838339451382",
     "34300.2431545305734337275392584419169725691"},
    {Kind::gencauchy, 8, 2.0, "65342.7131570412735382808063064918362880214",
     "21780.9043856804245127602687688306120960071"},
};

}  // namespace

TEST_CASE("terminating hypergeometric sums") {
  // 2F1(-3, 2; 4; 1) = (c-b)_3 / (c)_3 = 24/120
  dd a2[] = {dd(-3.0), dd(2.0)};
  dd b1[] = {dd(4.0)};
  CHECK(rel(skewgas::sop::hyp_terminating(a2, b1, dd(1.0), 4),
            dd(1.0) / dd(5.0)) < 1e-30);
  // 1F1(-2; 1/2; -1/4) = 25/12
  dd a1[] = {dd(-2.0)};
  dd bh[] = {dd(0.5)};
  CHECK(rel(skewgas::sop::hyp_terminating(a1, bh, dd(-0.25), 3),
            D("2.08333333333333333333333333333333333333333")) < 1e-30);
  // complex overload reduces to the real sum on the real axis
  cdd ca[] = {cdd(dd(-3.0)), cdd(dd(2.0))};
  cdd cb[] = {cdd(dd(4.0))};
  cdd cv = skewgas::sop::hyp_terminating(ca, cb, cdd(dd(1.0)), 4);
  CHECK(rel(cv.re, dd(1.0) / dd(5.0)) < 1e-30);
  CHECK(std::fabs(cv.im.hi) < 1e-30);
}

TEST_CASE("alpha and xi recurrences match frozen tables") {
  for (Kind kind : kKinds) {
    WeightFamily w = family_of(kind);
    for (double X : {0.5, 1.0, 2.0}) {
      auto ax = recurrence_alpha_xi(w, dd(X), 8);
      REQUIRE(ax.alpha.size() == 9);
      REQUIRE(ax.xi.size() == 9);
      CHECK(ax.alpha[0].hi == 1.0);
      CHECK(ax.xi[0].hi == 1.0);
      for (const auto& pin : kAlphaXiPins) {
        if (pin.kind != kind || pin.X != X) continue;
        CHECK(rel(ax.alpha[size_t(pin.j)], D(pin.alpha)) < 1e-24);
        CHECK(rel(ax.xi[size_t(pin.j)], D(pin.xi)) < 1e-24);
      }
    }
  }
}

TEST_CASE("closed form alpha agrees with the recurrence") {
  for (Kind kind : kKinds) {
    WeightFamily w = family_of(kind);
    for (double X : {0.5, 1.0, 2.0}) {
      auto ax = recurrence_alpha_xi(w, dd(X), 8);
      for (int j = 0; j <= 8; ++j)
        CHECK(rel(closed_form_alpha(w, dd(X), j), ax.alpha[size_t(j)]) <
              1e-12);
    }
  }
}

TEST_CASE("xi times c factor equals alpha") {
  for (Kind kind : kKinds) {
    WeightFamily w = family_of(kind);
    for (double X : {0.5, 1.0, 2.0}) {
      auto ax = recurrence_alpha_xi(w, dd(X), 8);
      for (int j = 0; j <= 8; ++j)
        CHECK(rel(ax.xi[size_t(j)] * c_factor(w, j), ax.alpha[size_t(j)]) <
              1e-24);
    }
  }
  CHECK(c_factor(family_of(Kind::gaussian), 5).hi == 1.0);
  CHECK(c_factor(family_of(Kind::laguerre), 5).hi == 1.0);
  // jacobi s = a + b = 2: c_j = 4 / (4j + 4)
  CHECK(rel(c_factor(family_of(Kind::jacobi), 1), dd(0.5)) < 1e-30);
  CHECK(rel(c_factor(family_of(Kind::jacobi), 3), dd(0.25)) < 1e-30);
  // gencauchy p = 25: c_j = 24 / (24 - 2j)
  CHECK(rel(c_factor(family_of(Kind::gencauchy), 1), dd(24.0) / dd(22.0)) <
        1e-30);
}

TEST_CASE("build_Q structure and gaussian coefficient pins") {
  auto gfam = build_Q(family_of(Kind::gaussian), dd(0.5), 3);
  REQUIRE(gfam.Q.size() == 6);
  // Q_2 = z^2 + 1/6, Q_3 = z^3 - (11/6) z at X = 1/2
  CHECK(rel(gfam.Q[2].coeff(0), dd(1.0) / dd(6.0)) < 1e-28);
  CHECK(std::fabs(gfam.Q[2].coeff(1).hi) < 1e-30);
  CHECK(rel(gfam.Q[3].coeff(1), dd(-11.0) / dd(6.0)) < 1e-28);
  CHECK(std::fabs(gfam.Q[3].coeff(0).hi) < 1e-30);
  CHECK(std::fabs(gfam.Q[3].coeff(2).hi) < 1e-30);

  for (Kind kind : kKinds) {
    WeightFamily w = family_of(kind);
    auto fam = build_Q(w, dd(0.5), 3);
    REQUIRE(fam.Q.size() == 6);
    REQUIRE(fam.alpha.size() == 4);
    REQUIRE(fam.xi.size() == 4);
    REQUIRE(fam.u.size() == 3);
    for (int n = 0; n < 6; ++n) {
      CHECK(fam.Q[size_t(n)].degree() == n);
      CHECK(rel(fam.Q[size_t(n)].leading(), dd(1.0)) < 1e-30);
    }
    for (int n = 0; n < 3; ++n) CHECK(fam.u[size_t(n)].sign == 1);
  }

  CHECK_THROWS_AS((void)build_Q(family_of(Kind::gaussian), dd(0.5), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)recurrence_alpha_xi(family_of(Kind::gaussian),
                                            dd(0.5), -1),
                  std::invalid_argument);
  // gencauchy p = 25 supports jmax up to 10 in the product route
  CHECK_NOTHROW((void)build_Q(family_of(Kind::gencauchy), dd(0.5), 10));
  CHECK_THROWS((void)build_Q(family_of(Kind::gencauchy), dd(0.5), 11));
  CHECK_THROWS_AS((void)c_factor(family_of(Kind::gencauchy), 12),
                  std::domain_error);
  CHECK_THROWS((void)closed_form_alpha(family_of(Kind::gencauchy), dd(0.5),
                                       13));
}

TEST_CASE("Q family is skew orthogonal under the quadrature product") {
  const dd X(0.5);
  for (Kind kind : kKinds) {
    const MomentEngine& e = eng(kind);
    auto fam = build_Q(family_of(kind), X, 3);
    std::vector<std::vector<dd>> S(6, std::vector<dd>(6, dd(0.0)));
    double smax = 0.0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        S[size_t(i)][size_t(j)] =
            e.skew_inner(fam.Q[size_t(i)], fam.Q[size_t(j)], X);
        smax = std::max(smax, std::fabs(S[size_t(i)][size_t(j)].hi));
      }
    for (int n = 0; n < 3; ++n) {
      dd u = fam.u[size_t(n)].to_dd();
      CHECK(rel(S[size_t(2 * n)][size_t(2 * n + 1)], u) < 1e-9);
    }
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        if (j == i + 1 && i % 2 == 0) continue;
        CHECK(std::fabs(S[size_t(i)][size_t(j)].hi) < 1e-9 * smax);
      }
  }
}

TEST_CASE("pfaffian extraction matches the direct construction") {
  const dd X(0.5);
  for (Kind kind : kKinds) {
    WeightFamily w = family_of(kind);
    auto m = eng(kind).moment_matrix(X);
    auto ext = skewgas::skewlinalg::extract_sop(w, m);
    auto fam = build_Q(w, X, 3);
    REQUIRE(ext.Q.size() == 6);
    REQUIRE(ext.u.size() == 3);
    for (int n = 0; n < 6; ++n) {
      double scale = 0.0;
      for (int k = 0; k <= n; ++k)
        scale = std::max(scale, std::fabs(fam.Q[size_t(n)].coeff(k).hi));
      for (int k = 0; k <= n; ++k) {
        dd diff = ext.Q[size_t(n)].coeff(k) - fam.Q[size_t(n)].coeff(k);
        CHECK(std::fabs(diff.hi) < 1e-8 * scale);
      }
    }
    for (int n = 0; n < 3; ++n)
      CHECK(rel(ext.u[size_t(n)], fam.u[size_t(n)].to_dd()) < 1e-8);
  }
}
