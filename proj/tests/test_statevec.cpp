// Copyright 2026 The qfmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qfmix/statevec.hpp"

using namespace qfmix;

namespace {

Gate random_gate(std::mt19937_64& rng, std::size_t n, std::vector<std::size_t>& qubits) {
    std::uniform_real_distribution<double> ang(-2 * std::numbers::pi, 2 * std::numbers::pi);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const int pick = static_cast<int>(rng() % (n >= 3 ? 9 : n == 2 ? 7 : 5));
    Gate g;
    switch (pick) {
    case 0: g = Gate::h(); break;
    case 1: g = Gate::x(); break;
    case 2: g = Gate::z(); break;
    case 3: g = Gate::rx(ang(rng)); break;
    case 4: g = Gate::ry(ang(rng)); break;
    case 5: g = Gate::cx(); break;
    case 6: g = Gate::cz(); break;
    default: {
        const std::size_t nc = 1 + rng() % (n - 1);
        std::vector<bool> pol(nc);
        for (std::size_t i = 0; i < nc; ++i) pol[i] = rng() & 1;
        g = pick == 7 ? Gate::mcx(pol) : Gate::mcz(pol);
    }
    }
    qubits.assign(perm.begin(), perm.begin() + static_cast<long>(g.arity()));
    return g;
}

StateVector random_state(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    auto s = new_state(n);
    double nn = 0;
    for (auto& a : s.amps) {
        a = cplx(g(rng), g(rng));
        nn += std::norm(a);
    }
    for (auto& a : s.amps) a /= std::sqrt(nn);
    return s;
}

}  // namespace

TEST(StateVector, GroundStates) {
    auto s1 = new_state(1);
    ASSERT_EQ(s1.amps.size(), 2u);
    EXPECT_EQ(s1.amps[0], cplx(1));
    EXPECT_EQ(s1.amps[1], cplx(0));
    auto s2 = new_state(2);
    ASSERT_EQ(s2.amps.size(), 4u);
    EXPECT_EQ(s2.amps[0], cplx(1));
    for (int i = 1; i < 4; ++i) EXPECT_EQ(s2.amps[i], cplx(0));
}

TEST(StateVector, CapNamesMemory) {
    try {
        new_state(25);
        FAIL() << "expected a resource error";
    } catch (const ResourceError& e) {
        EXPECT_EQ(e.required_qubits(), 25u);
        EXPECT_NE(std::string(e.what()).find("2^25"), std::string::npos);
    }
    EXPECT_THROW(new_state(0), std::invalid_argument);
    EXPECT_NO_THROW(new_state(3, 3));
    EXPECT_THROW(new_state(4, 3), ResourceError);
}

TEST(Apply, HadamardOnZero) {
    auto s = new_state(1);
    apply(s, Gate::h(), {0});
    EXPECT_NEAR(s.amps[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.amps[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Apply, RxPiFlipsProbability) {
    for (double p : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
        auto s = new_state(1);
        s.amps = {std::sqrt(1 - p), std::sqrt(p)};
        apply(s, Gate::rx(std::numbers::pi), {0});
        EXPECT_NEAR(marginal_prob_one(s, 0), 1 - p, 1e-12);
    }
}

TEST(Apply, CxOnTenGivesEleven) {
    auto s = new_state(2);
    apply(s, Gate::x(), {0});  // |10>
    apply(s, Gate::cx(), {0, 1});
    EXPECT_NEAR(std::abs(s.amps[3]), 1.0, 1e-15);
}

TEST(Apply, NegativePolarityFiresOnZero) {
    auto s = new_state(3);
    apply(s, Gate::mcx({false, false}), {0, 1, 2});
    EXPECT_NEAR(std::abs(s.amps[1]), 1.0, 1e-15);  // |001>
    apply(s, Gate::x(), {0});
    apply(s, Gate::mcx({true, false}), {0, 1, 2});
    EXPECT_NEAR(std::abs(s.amps[4]), 1.0, 1e-15);  // |100>
}

TEST(Apply, Errors) {
    auto s = new_state(2);
    EXPECT_THROW(apply(s, Gate::cx(), {0}), std::invalid_argument);
    EXPECT_THROW(apply(s, Gate::cx(), {1, 1}), std::invalid_argument);
    EXPECT_THROW(apply(s, Gate::h(), {2}), std::out_of_range);
    CircuitFragment c;
    EXPECT_THROW(c.add(Gate::mcx({true, true}), {0, 1}), std::invalid_argument);
}

TEST(Marginal, Examples) {
    auto s = new_state(1);
    EXPECT_EQ(marginal_prob_one(s, 0), 0.0);
    auto b = new_state(2);
    apply(b, Gate::h(), {0});
    apply(b, Gate::cx(), {0, 1});
    EXPECT_NEAR(marginal_prob_one(b, 0), 0.5, 1e-15);
    EXPECT_NEAR(marginal_prob_one(b, 1), 0.5, 1e-15);
    EXPECT_THROW(marginal_prob_one(b, 2), std::out_of_range);
}

TEST(ProductQubit, Examples) {
    auto s = new_state(2);
    apply(s, Gate::x(), {1});  // |01>
    EXPECT_TRUE(is_product_qubit(s, 0));
    auto b = new_state(2);
    apply(b, Gate::h(), {0});
    apply(b, Gate::cx(), {0, 1});
    EXPECT_FALSE(is_product_qubit(b, 0));
    auto hh = new_state(2);
    apply(hh, Gate::h(), {0});
    apply(hh, Gate::h(), {1});
    EXPECT_TRUE(is_product_qubit(hh, 1));
}

TEST(Gates, UnitaryMatrices) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> qs;
        const Gate g = random_gate(rng, 3, qs);
        const auto u = oracle::embed(3, g, qs);
        for (std::size_t i = 0; i < u.dim; ++i)
            for (std::size_t j = 0; j < u.dim; ++j) {
                cplx acc = 0;
                for (std::size_t k = 0; k < u.dim; ++k) acc += u.at(i, k) * std::conj(u.at(j, k));
                EXPECT_NEAR(std::abs(acc - (i == j ? cplx(1) : cplx(0))), 0.0, 1e-12);
            }
    }
}

// Property: random circuits keep the norm.
TEST(Properties, NormPreservation) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        auto s = random_state(rng, n);
        const std::size_t len = 1 + rng() % 200;
        for (std::size_t k = 0; k < len; ++k) {
            std::vector<std::size_t> qs;
            const Gate g = random_gate(rng, n, qs);
            apply(s, g, qs);
        }
        EXPECT_LT(std::abs(s.norm2() - 1), 1e-9) << "n=" << n;
    }
}

// Property: gate followed by its inverse is the identity.
TEST(Properties, InverseRoundTrip) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        auto s = random_state(rng, n);
        const auto before = s.amps;
        std::vector<std::size_t> qs;
        const Gate g = random_gate(rng, n, qs);
        apply(s, g, qs);
        apply(s, g.inverse(), qs);
        for (std::size_t i = 0; i < s.amps.size(); ++i) EXPECT_LT(std::abs(s.amps[i] - before[i]), 1e-10);
    }
}

// Property: in-place kernels equal the Kronecker-product matrix (n <= 4).
TEST(Properties, EmbeddingMatchesKronecker) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 1 + rng() % 4;
        auto s = random_state(rng, n);
        std::vector<std::size_t> qs;
        const Gate g = random_gate(rng, n, qs);
        const auto expect = oracle::apply(oracle::embed(n, g, qs), s.amps);
        apply(s, g, qs);
        for (std::size_t i = 0; i < s.amps.size(); ++i) EXPECT_LT(std::abs(s.amps[i] - expect[i]), 1e-12);
    }
}

// Property: marginals agree with the zero-outcome complement and with amplitudes.
TEST(Properties, MarginalConsistency) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        const auto s = random_state(rng, n);
        for (std::size_t q = 0; q < n; ++q) {
            double p0 = 0;
            for (std::size_t i = 0; i < s.amps.size(); ++i)
                if (!((i >> (n - 1 - q)) & 1)) p0 += std::norm(s.amps[i]);
            EXPECT_NEAR(marginal_prob_one(s, q), 1 - p0, 1e-12);
            const auto r = reduced_density(s, q);
            EXPECT_NEAR(r[1].real(), marginal_prob_one(s, q), 1e-12);
        }
    }
}

TEST(Fragment, ComposeMapInverse) {
    CircuitFragment a(2), b(3);
    a.add(Gate::h(), {0}).add(Gate::cx(), {0, 1});
    b.add(Gate::ry(0.3), {2});
    const auto c = compose(a, b);
    EXPECT_EQ(c.qubit_span(), 3u);
    EXPECT_EQ(c.size(), 3u);
    const std::size_t map[] = {4, 2};
    const auto m = a.mapped(map);
    EXPECT_EQ(m.ops()[1].qubits, (std::vector<std::size_t>{4, 2}));
    auto s = new_state(3);
    run(s, c);
    run(s, c.inverse());
    EXPECT_NEAR(std::abs(s.amps[0]), 1.0, 1e-12);
}

TEST(Fragment, MeasureIsTerminalNoOp) {
    auto s = new_state(1);
    apply(s, Gate::h(), {0});
    const auto before = s.amps;
    apply(s, Gate::measure(), {0});
    EXPECT_EQ(s.amps, before);
}
