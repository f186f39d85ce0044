#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pdp/baseline.hpp"
#include "pdp/rng.hpp"

using namespace pdp;

namespace {

TravelMatrix complete_unit(int n) {
    TravelMatrix m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m.set(i, j, i == j ? 0.0 : 1.0);
    }
    return m;
}

TravelMatrix random_int_matrix(Rng& rng, int n) {
    TravelMatrix m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = rng.uniform_int(1, 30);
            m.set(i, j, d);
            m.set(j, i, d);
        }
    }
    return m;
}

double best_tour_by_permutations(const std::vector<int>& nodes, const TravelMatrix& m,
                                 int start) {
    std::vector<int> rest;
    for (int n : nodes) {
        if (n != start) rest.push_back(n);
    }
    std::sort(rest.begin(), rest.end());
    double best = -1.0;
    do {
        double len = m.at(start, rest.front());
        for (std::size_t k = 1; k < rest.size(); ++k) len += m.at(rest[k - 1], rest[k]);
        len += m.at(rest.back(), start);
        if (best < 0.0 || len < best) best = len;
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

}  // namespace

TEST_CASE("triangle of unit edges") {
    const auto m = complete_unit(3);
    const TourResult t = tsp_exact({0, 1, 2}, m, 0);
    CHECK(t.length == 3.0);
    CHECK(t.order.size() == 4);
    CHECK(t.order.front() == 0);
    CHECK(t.order.back() == 0);
}

TEST_CASE("unit square corners") {
    // distances from coordinates (0,0) (1,0) (1,1) (0,1)
    TravelMatrix m(4);
    const double xs[4] = {0, 1, 1, 0};
    const double ys[4] = {0, 0, 1, 1};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
            m.set(i, j, std::sqrt(dx * dx + dy * dy));
        }
    }
    const TourResult t = tsp_exact({0, 1, 2, 3}, m, 0);
    CHECK(t.length == doctest::Approx(4.0));
}

TEST_CASE("held-karp equals permutation enumeration on 8 nodes") {
    Rng rng(808);
    for (int trial = 0; trial < 12; ++trial) {
        const auto m = random_int_matrix(rng, 8);
        std::vector<int> nodes{0, 1, 2, 3, 4, 5, 6, 7};
        const TourResult t = tsp_exact(nodes, m, 0);
        CHECK(t.length == best_tour_by_permutations(nodes, m, 0));

        // the reported order realizes the reported length
        double check = 0.0;
        for (std::size_t k = 1; k < t.order.size(); ++k) {
            check += m.at(t.order[k - 1], t.order[k]);
        }
        CHECK(check == t.length);

        // every node exactly once
        std::vector<int> inner(t.order.begin() + 1, t.order.end() - 1);
        std::sort(inner.begin(), inner.end());
        CHECK(inner == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
    }
}

TEST_CASE("held-karp size limit") {
    const auto m = complete_unit(15);
    std::vector<int> nodes;
    for (int k = 0; k < 15; ++k) nodes.push_back(k);
    CHECK_THROWS_AS(tsp_exact(nodes, m, 0), TooLarge);
}

TEST_CASE("single and two node tours") {
    const auto m = complete_unit(3);
    CHECK(tsp_exact({0}, m, 0).length == 0.0);
    CHECK(tsp_exact({0, 2}, m, 0).length == 2.0);  // out and back
}

TEST_CASE("2-opt never beats the exact tour and is deterministic") {
    Rng rng(1212);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.uniform_int(4, 10);
        const auto m = random_int_matrix(rng, n);
        std::vector<int> nodes;
        for (int k = 0; k < n; ++k) nodes.push_back(k);
        const TourResult exact = tsp_exact(nodes, m, 0);
        const TourResult heur = tsp_2opt(nodes, m, 0, 99);
        CHECK(heur.length >= exact.length);
        const TourResult heur2 = tsp_2opt(nodes, m, 0, 99);
        CHECK(heur.order == heur2.order);
        CHECK(heur.length == heur2.length);
    }
}

TEST_CASE("2-opt keeps an already optimal tour") {
    // unit square: nearest-neighbour already walks the perimeter, the optimum
    TravelMatrix m(4);
    const double xs[4] = {0, 1, 1, 0};
    const double ys[4] = {0, 0, 1, 1};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double dx = xs[i] - xs[j], dy = ys[i] - ys[j];
            m.set(i, j, std::sqrt(dx * dx + dy * dy));
        }
    }
    const TourResult exact = tsp_exact({0, 1, 2, 3}, m, 0);
    const TourResult heur = tsp_2opt({0, 1, 2, 3}, m, 0, 1);
    CHECK(heur.length == doctest::Approx(exact.length));
}

TEST_CASE("exact length lower-bounds any sampled tour") {
    Rng rng(77);
    const auto m = random_int_matrix(rng, 9);
    std::vector<int> nodes{0, 1, 2, 3, 4, 5, 6, 7, 8};
    const TourResult exact = tsp_exact(nodes, m, 0);
    std::vector<int> rest{1, 2, 3, 4, 5, 6, 7, 8};
    for (int trial = 0; trial < 50; ++trial) {
        for (std::size_t k = rest.size(); k > 1; --k) {
            std::swap(rest[k - 1],
                      rest[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(k) - 1))]);
        }
        double len = m.at(0, rest.front());
        for (std::size_t k = 1; k < rest.size(); ++k) len += m.at(rest[k - 1], rest[k]);
        len += m.at(rest.back(), 0);
        CHECK(len >= exact.length);
    }
}
