#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "extremal/evaluate.hpp"
#include "test_support.hpp"

using namespace extremal;
using testing_support::load;
using testing_support::random_complex;

namespace {

const double kLog2PlusSqrt3 = std::log(2.0 + std::sqrt(3.0));
const double kLog1PlusSqrt2 = std::log(1.0 + std::sqrt(2.0));

SupportSet interval_set(double a, double b) {
    const std::vector<Halfspace> hs{{{1}, -a}, {{-1}, b}};
    return enumerate_supports(validate(hs, 1));
}

double v(const SupportSet& set, std::initializer_list<Complex> z) {
    const ComplexVector p(z);
    return eval_extremal(set, p).value;
}

// log |T_n(x)| / n for real x > 1 via the three-term recurrence, rescaled to
// stay finite.
double chebyshev_root(double x, int n) {
    double t0 = 1.0, t1 = x, log_scale = 0.0;
    for (int k = 1; k < n; ++k) {
        double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
        if (std::abs(t1) > 1e100) {
            t0 /= 1e100;
            t1 /= 1e100;
            log_scale += std::log(1e100);
        }
    }
    return (std::log(std::abs(t1)) + log_scale) / n;
}

const char* const kFixtures[] = {"quad.json", "square.json", "triangle.json", "cube.json",
                                 "prism.json", "tetrahedron.json", "octahedron.json"};

}  // namespace

TEST_CASE("inv_joukowski_log") {
    CHECK(inv_joukowski_log(1.0) == 0.0);
    CHECK(inv_joukowski_log(1.25) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(inv_joukowski_log(2.0) == doctest::Approx(kLog2PlusSqrt3).epsilon(1e-15));
    CHECK(inv_joukowski_log(1.0 - 5e-13) == 0.0);
    CHECK_THROWS_AS(inv_joukowski_log(0.5), DomainError);
    for (double e : {1e-12, 1e-6, 0.3, 5.0, 1e8}) {
        CAPTURE(e);
        CHECK(log_h_excess(e) == doctest::Approx(testing_support::oracle_log_h(e)).epsilon(1e-13));
    }
}

TEST_CASE("barycentric coordinates") {
    const PolytopeH quad = validate(testing_support::quad_halfspaces(), 2);
    const std::size_t s3[] = {0, 1, 2};
    const auto s = try_simplex(quad, s3);
    REQUIRE(s.has_value());
    // order the frame as (0,0), (1,0), (0,3) so lambda matches the closed form
    const std::vector<Vector> apexes{{0, 0}, {1, 0}, {0, 3}};
    CHECK(std::all_of(apexes.begin(), apexes.end(), [&](const Vector& a) {
        return std::any_of(s->simplex.apexes.begin(), s->simplex.apexes.end(),
                           [&](const Vector& b) { return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) < 1e-12; });
    }));
    const BarycentricFrame frame(apexes);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexVector z = random_complex(rng, 2, -5.0, 5.0);
        const ComplexVector l = barycentric(frame, z);
        const Complex want[3] = {1.0 - z[0] - z[1] / 3.0, z[0], z[1] / 3.0};
        for (int k = 0; k < 3; ++k) CHECK(std::abs(l[k] - want[k]) < 1e-13);
    }

    for (std::size_t k = 0; k < 3; ++k) {
        const ComplexVector z{apexes[k][0], apexes[k][1]};
        const ComplexVector l = barycentric(frame, z);
        for (std::size_t m = 0; m < 3; ++m) CHECK(std::abs(l[m] - (m == k ? 1.0 : 0.0)) < 1e-14);
    }
    const ComplexVector centroid{1.0 / 3.0, 1.0};
    for (const Complex& c : barycentric(frame, centroid)) CHECK(std::abs(c - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("eval_simplex examples") {
    const SupportSet seg = interval_set(-1.0, 1.0);
    REQUIRE(seg.size() == 1);
    const auto& s = std::get<SimplexSupport>(seg.supports[0]);
    const ComplexVector two{2.0};
    CHECK(eval_simplex(s, two) == doctest::Approx(kLog2PlusSqrt3).epsilon(1e-14));
    const ComplexVector half{0.5};
    CHECK(eval_simplex(s, half) == 0.0);

    // |T_n(2)|^(1/n) approaches 2 + sqrt(3) from below with gap about log(2)/n
    for (int n : {16, 128, 1024}) {
        const double c = chebyshev_root(2.0, n);
        CHECK(c < eval_simplex(s, two));
        CHECK(eval_simplex(s, two) - c < 1.01 * std::log(2.0) / n);
    }

    const PolytopeH quad = validate(testing_support::quad_halfspaces(), 2);
    const std::size_t s3[] = {0, 1, 2};
    const auto tri = try_simplex(quad, s3);
    const ComplexVector z{2.0, 0.0};
    CHECK(eval_simplex(*tri, z) == doctest::Approx(std::log(3.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-14));
    const ComplexVector inside{0.2, 0.5};
    CHECK(eval_simplex(*tri, inside) == 0.0);
}

TEST_CASE("eval_strip examples") {
    const SupportSet sq = enumerate_supports(load("square.json"));
    const StripSupport* slab_x = nullptr;
    for (const auto& s : sq.supports) {
        const auto& strip = std::get<StripSupport>(s);
        if (std::abs(strip.basis(0, 0)) > 0.5) slab_x = &strip;
    }
    REQUIRE(slab_x != nullptr);
    const ComplexVector a{2.0, 17.0};
    CHECK(eval_strip(*slab_x, a) == doctest::Approx(kLog2PlusSqrt3).epsilon(1e-14));
    const ComplexVector b{Complex(0, 1), 0.0};
    CHECK(eval_strip(*slab_x, b) == doctest::Approx(kLog1PlusSqrt2).epsilon(1e-14));
    const ComplexVector c{0.3, -40.0};
    CHECK(eval_strip(*slab_x, c) == 0.0);
}

TEST_CASE("eval_extremal examples") {
    const SupportSet quad = enumerate_supports(load("quad.json"));
    const double want = std::log(13.0 / 3.0 + std::sqrt(160.0) / 3.0);
    const EvalResult r = eval_extremal(quad, ComplexVector{2.0, 2.0}, true);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-14));
    REQUIRE(r.per_support.has_value());
    CHECK(r.per_support->size() == 2);
    CHECK((*r.per_support)[0] == doctest::Approx((*r.per_support)[1]).epsilon(1e-14));
    CHECK(r.argmax == 0);
    CHECK_FALSE(eval_extremal(quad, ComplexVector{2.0, 2.0}).per_support.has_value());

    const Vector& c = quad.polytope.interior();
    CHECK(v(quad, {c[0], c[1]}) == 0.0);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const ComplexVector z = random_complex(rng, 2, -3.0, 3.0);
        CHECK(std::abs(eval_extremal(quad, z).value - testing_support::quad_closed_form(z[0], z[1])) <= 1e-12);
    }

    CHECK_THROWS_AS(eval_extremal(quad, ComplexVector{1.0}), std::invalid_argument);
}

TEST_CASE("product rule on the square") {
    const SupportSet sq = enumerate_supports(load("square.json"));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const ComplexVector z = random_complex(rng, 2, -3.0, 3.0);
        const double want = std::max(eval_interval(-1, 1, z[0]), eval_interval(-1, 1, z[1]));
        CHECK(std::abs(eval_extremal(sq, z).value - want) <= 1e-12);
    }
    const SupportSet cube = enumerate_supports(load("cube.json"));
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexVector z = random_complex(rng, 3, -3.0, 3.0);
        double want = 0.0;
        for (const Complex& zi : z) want = std::max(want, eval_interval(-1, 1, zi));
        CHECK(std::abs(eval_extremal(cube, z).value - want) <= 1e-12);
    }
}

TEST_CASE("lundin_ball") {
    CHECK(lundin_ball(ComplexVector{2.0, 0.0}, 1.0) == doctest::Approx(kLog2PlusSqrt3).epsilon(1e-14));
    CHECK(lundin_ball(ComplexVector{Complex(0, 1), 0.0}, 1.0) == doctest::Approx(kLog1PlusSqrt2).epsilon(1e-14));
    CHECK(lundin_ball(ComplexVector{0.3, -0.4}, 1.0) == 0.0);
    CHECK(lundin_ball(ComplexVector{0.6, 0.8}, 1.0) == 0.0);
    CHECK_THROWS_AS(lundin_ball(ComplexVector{1.0}, 0.0), std::invalid_argument);

    // a real segment through the ball is an interval: V_ball <= V_[-R,R] on that line
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex t = random_complex(rng, 1, -3.0, 3.0)[0];
        CHECK(std::abs(lundin_ball(ComplexVector{t, 0.0, 0.0}, 2.0) - eval_interval(-2, 2, t)) <= 1e-12);
    }
}

TEST_CASE("eval_interval oracle") {
    CHECK(eval_interval(-1, 1, 2.0) == doctest::Approx(kLog2PlusSqrt3).epsilon(1e-15));
    CHECK(eval_interval(-1, 1, 0.9) == 0.0);
    CHECK_THROWS_AS(eval_interval(1, 1, 0.0), std::invalid_argument);

    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 1000; ++trial) {
        double a = u(rng), b = u(rng);
        if (std::abs(a - b) < 1e-2) continue;
        if (a > b) std::swap(a, b);
        const SupportSet seg = interval_set(a, b);
        const Complex t(u(rng), u(rng));
        CHECK(std::abs(eval_simplex(std::get<SimplexSupport>(seg.supports[0]), ComplexVector{t}) -
                       eval_interval(a, b, t)) <= 1e-12);
    }
}

TEST_CASE("property: barycentric coordinates sum to one") {
    std::mt19937_64 rng(23);
    for (const char* f : kFixtures) {
        CAPTURE(std::string(f));
        const SupportSet set = enumerate_supports(load(f));
        for (const auto& s : set.supports) {
            const SimplexGeometry& g = is_simplex(s) ? std::get<SimplexSupport>(s).simplex
                                                     : std::get<StripSupport>(s).cross_section;
            const BarycentricFrame frame(g.apexes);
            for (int trial = 0; trial < 100; ++trial) {
                const ComplexVector z = random_complex(rng, g.dim(), -10.0, 10.0);
                Complex sum{};
                for (const Complex& l : barycentric(frame, z)) sum += l;
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            }
        }
    }
}

TEST_CASE("property: zero set is K") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-3.0, 4.0);
    for (const char* f : kFixtures) {
        CAPTURE(std::string(f));
        const SupportSet set = enumerate_supports(load(f));
        const Evaluator ev(set);
        const PolytopeH& k = set.polytope;
        const std::size_t d = k.dim();
        for (int trial = 0; trial < 300; ++trial) {
            Vector x(d);
            for (auto& c : x) c = u(rng);
            double margin = 1e300;
            for (const auto& h : k.halfspaces()) margin = std::min(margin, h.eval(x));
            ComplexVector z(x.begin(), x.end());
            const double val = ev.evaluate(z).value;
            if (margin >= 0.0) CHECK(val <= 1e-9);
            else if (margin < -1e-6) CHECK(val > 1e-9);
            z[trial % d] += Complex(0.0, 1e-4);
            CHECK(ev.evaluate(z).value > 1e-9);
        }
        for (const auto& vert : k.vertices()) CHECK(ev.evaluate(ComplexVector(vert.begin(), vert.end())).value <= 1e-9);
    }
}

TEST_CASE("property: monotone in K") {
    const SupportSet tri = enumerate_supports(load("triangle.json"));
    const SupportSet quad = enumerate_supports(load("quad.json"));
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const ComplexVector z = random_complex(rng, 2, -3.0, 3.0);
        CHECK(eval_extremal(tri, z).value >= eval_extremal(quad, z).value - 1e-14);
    }
}

TEST_CASE("property: affine pullback") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const char* f : {"quad.json", "prism.json"}) {
        CAPTURE(std::string(f));
        const PolytopeH k = load(f);
        const std::size_t d = k.dim();
        const SupportSet set = enumerate_supports(k);
        for (int map = 0; map < 10; ++map) {
            // identity plus a modest perturbation stays well conditioned
            Matrix m = Matrix::identity(d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m(i, j) += 0.4 * u(rng);
            Vector c(d);
            for (auto& x : c) x = 2.0 * u(rng);
            std::vector<Halfspace> pulled;
            for (const auto& h : k.halfspaces()) {
                Vector n(d, 0.0);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) n[j] += m(i, j) * h.normal[i];
                pulled.push_back({n, dot(h.normal, c) + h.offset});
            }
            const SupportSet back = enumerate_supports(validate(pulled, d));
            for (int trial = 0; trial < 50; ++trial) {
                const ComplexVector z = random_complex(rng, d, -2.0, 2.0);
                ComplexVector az(d);
                for (std::size_t i = 0; i < d; ++i) {
                    az[i] = c[i];
                    for (std::size_t j = 0; j < d; ++j) az[i] += m(i, j) * z[j];
                }
                CHECK(std::abs(eval_extremal(back, z).value - eval_extremal(set, az).value) <= 1e-9);
            }
        }
    }
}

TEST_CASE("property: ball limit") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexVector z = random_complex(rng, 1 + trial % 4, -5.0, 5.0);
        double prev = lundin_ball(z, 1.0);
        for (double r : {10.0, 100.0, 1000.0}) {
            const double cur = lundin_ball(z, r);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
        double len = 0.0;
        for (const Complex& c : z) len += std::norm(c);
        CHECK(lundin_ball(z, 1e4 * (1.0 + std::sqrt(len))) < 1e-4);
    }
}

TEST_CASE("property: strip values ignore the null space") {
    std::mt19937_64 rng(43);
    for (const char* f : {"square.json", "cube.json", "prism.json"}) {
        CAPTURE(std::string(f));
        const SupportSet set = enumerate_supports(load(f));
        const std::size_t d = set.polytope.dim();
        for (const auto& s : set.supports) {
            const auto& strip = std::get<StripSupport>(s);
            for (int trial = 0; trial < 100; ++trial) {
                Vector b = testing_support::random_unit(rng, d);
                Vector coeff(strip.basis.rows(), 0.0);
                for (std::size_t r = 0; r < strip.basis.rows(); ++r)
                    for (std::size_t c = 0; c < d; ++c) coeff[r] += strip.basis(r, c) * b[c];
                for (std::size_t r = 0; r < strip.basis.rows(); ++r)
                    for (std::size_t c = 0; c < d; ++c) b[c] -= coeff[r] * strip.basis(r, c);
                const ComplexVector z = random_complex(rng, d, -3.0, 3.0);
                ComplexVector zb = z;
                for (std::size_t c = 0; c < d; ++c) zb[c] += 5.0 * b[c];
                CHECK(std::abs(eval_strip(strip, zb) - eval_strip(strip, z)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("property: continuity away from the real points") {
    // V is Lipschitz off R^d; near K it is only Hoelder-1/2, so the boxes keep
    // |Im z| >= 0.1 in one coordinate.
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> re(-2.0, 3.0), im(0.1, 1.0);
    for (const char* f : kFixtures) {
        CAPTURE(std::string(f));
        const Evaluator ev(enumerate_supports(load(f)));
        const std::size_t d = ev.dim();
        const double lipschitz = 20.0;
        for (int trial = 0; trial < 300; ++trial) {
            ComplexVector z(d);
            for (auto& c : z) c = {re(rng), im(rng)};
            ComplexVector zd = z;
            for (auto& c : zd) c += Complex(1e-6 / std::sqrt(2.0 * d), 1e-6 / std::sqrt(2.0 * d));
            CHECK(std::abs(ev.evaluate(z).value - ev.evaluate(zd).value) <= lipschitz * 1e-6);
        }
    }
}

TEST_CASE("property: growth is log t plus a converging constant") {
    // V(tu) - log t converges with an O(1/t) correction, so each decade shrinks
    // the successive difference roughly tenfold and all values stay bounded.
    std::mt19937_64 rng(53);
    for (const char* f : {"quad.json", "square.json", "tetrahedron.json"}) {
        CAPTURE(std::string(f));
        const Evaluator ev(enumerate_supports(load(f)));
        for (int ray = 0; ray < 10; ++ray) {
            ComplexVector u = random_complex(rng, ev.dim(), -1.0, 1.0);
            std::vector<double> g;
            for (double t : {1e2, 1e3, 1e4, 1e5, 1e6}) {
                ComplexVector z = u;
                for (auto& c : z) c *= t;
                g.push_back(ev.evaluate(z).value - std::log(t));
            }
            for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(g[i] - g[i - 1]) <= 10.0 / std::pow(10.0, i + 1.0));
            for (double x : g) CHECK(std::abs(x) < 10.0);
        }
    }
}
