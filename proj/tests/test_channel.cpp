// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ris/channel.hpp"
#include "ris/errors.hpp"
#include "ris/rng.hpp"
#include "ris/scene.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace ris;
using namespace ris::channel;
using antenna::Orientation;
using antenna::PatternPtr;

namespace
{
    const double inf = std::numeric_limits<double>::infinity();
    const LinkBudget lb = LinkBudget::from_frequency(3.5e9, 1.0);

    PatternPtr ideal() { return std::make_shared<const antenna::RadiationPattern>(antenna::synthetic_patch_pattern(6.0, -inf)); }
    PatternPtr leaky() { return std::make_shared<const antenna::RadiationPattern>(antenna::synthetic_patch_pattern(6.0, -15.0)); }

    Pose pose(Vec3 p, Orientation o, PatternPtr pat, double psi = 0.0) { return {p, o, std::move(pat), psi}; }

    RisElement element(Vec3 p, Orientation o, PatternPtr pat, double plate = 0.0428)
    {
        RisElement e;
        e.pose = pose(p, o, std::move(pat));
        e.plate_width_m = plate;
        e.plate_height_m = plate;
        return e;
    }

    // element at the origin facing +x; tx/rx in front of it facing back
    struct Bench
    {
        Pose tx, rx;
        RisElement e;
    };

    Bench bench(PatternPtr pat)
    {
        return {pose({0.8, 0.0, 0.0}, {0, 0, 180}, pat), pose({0.8, 0.2, 0.0}, {0, 0, 180}, pat),
                element(Vec3::Zero(), {}, pat)};
    }

    double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}

TEST(PathLoss, Values)
{
    EXPECT_NEAR(path_loss(lb.wavelength() / (4.0 * std::numbers::pi), lb), 1.0, 1e-12);
    EXPECT_NEAR(10.0 * std::log10(path_loss(2.0, lb) / path_loss(1.0, lb)), -6.0206, 1e-4);
    EXPECT_NEAR(path_loss(1.0, lb), 4.65e-5, 0.01e-5);
    EXPECT_NEAR(10.0 * std::log10(path_loss(1.0, lb)), -43.3, 0.05);
    EXPECT_THROW(path_loss(0.0, lb), ZeroDistance);
}

TEST(LinkBudget, WaveNumber)
{
    EXPECT_NEAR(lb.wave_number() * lb.wavelength(), 2.0 * std::numbers::pi, 1e-12);
    EXPECT_THROW(LinkBudget(1.0, 0.0), ValidationError);
    EXPECT_THROW(LinkBudget::from_frequency(-1.0), ValidationError);
}

TEST(Los, FacingIdealAntennas)
{
    const auto p = ideal();
    const Pose tx = pose({0, 0, 0}, {}, p), rx = pose({2, 0, 0}, {0, 0, 180}, p);
    const double g = db_to_amplitude(6.0);
    const cplx c = los_coefficient(tx, rx, lb);
    EXPECT_NEAR(std::abs(c), std::sqrt(path_loss(2.0, lb)) * g * g, 1e-15);
    // phase: -k d
    EXPECT_NEAR(std::abs(wrap_deg(rad_to_deg(std::arg(c)) + rad_to_deg(lb.wave_number() * 2.0))), 0.0, 1e-6);
}

TEST(Los, CrossPolarizedReceiverNulls)
{
    const auto p = ideal();
    const Pose tx = pose({0, 0, 0}, {}, p);
    const Pose rx = pose({2, 0, 0}, {0, 0, 180}, p);
    const Pose rx_rolled = pose({2, 0, 0}, antenna::roll_about_boresight({0, 0, 180}, 90.0), p);
    EXPECT_LT(std::abs(los_coefficient(tx, rx_rolled, lb)), 1e-12 * std::abs(los_coefficient(tx, rx, lb)));
}

TEST(Los, Reciprocity)
{
    const auto p = leaky();
    for (std::uint64_t i = 0; i < 50; ++i)
    {
        const Pose a = pose({rng::uniform(1, 0, i), rng::uniform(1, 1, i), rng::uniform(1, 2, i)},
                            {rng::uniform(1, 3, i) * 360, rng::uniform(1, 4, i) * 360, rng::uniform(1, 5, i) * 360}, p, 10.0);
        const Pose b = pose({2 + rng::uniform(1, 6, i), rng::uniform(1, 7, i), rng::uniform(1, 8, i)},
                            {rng::uniform(1, 9, i) * 360, rng::uniform(1, 10, i) * 360, rng::uniform(1, 11, i) * 360}, p, -30.0);
        EXPECT_LT(rel(los_coefficient(a, b, lb), los_coefficient(b, a, lb)), 1e-12);
    }
}

TEST(Los, InitialPhasesRotateCoefficient)
{
    const auto p = ideal();
    const Pose tx = pose({0, 0, 0}, {}, p, 30.0), rx = pose({2, 0, 0}, {0, 0, 180}, p, 15.0);
    const Pose tx0 = pose({0, 0, 0}, {}, p), rx0 = pose({2, 0, 0}, {0, 0, 180}, p);
    const cplx ratio = los_coefficient(tx, rx, lb) / los_coefficient(tx0, rx0, lb);
    EXPECT_NEAR(rad_to_deg(std::arg(ratio)), -45.0, 1e-9);
}

TEST(AmMatrix, ZeroGammaRankOneLinear)
{
    const auto e = element(Vec3::Zero(), {}, leaky());
    const AnglePair to_rx{5, 20}, to_tx{-3, -15};
    EXPECT_EQ(am_polarization_matrix(e, 0.0, to_rx, to_tx).norm(), 0.0);
    const Mat2c m = am_polarization_matrix(e, cplx(0.6, 0.3), to_rx, to_tx);
    const Eigen::JacobiSVD<Mat2c> svd(m);
    EXPECT_LT(svd.singularValues()(1), 1e-12 * svd.singularValues()(0));
    const Mat2c half = am_polarization_matrix(e, cplx(0.3, 0.15), to_rx, to_tx);
    EXPECT_NEAR((half * 2.0 - m).norm(), 0.0, 1e-15);
}

TEST(Am, CollinearBoresightChain)
{
    const auto p = ideal();
    const Pose tx = pose({1.0, 0, 0}, {0, 0, 180}, p), rx = pose({2.5, 0, 0}, {0, 0, 180}, p);
    const auto e = element(Vec3::Zero(), {}, p);
    const auto code = dps::StateCode::from_string("0101");
    const cplx gamma = dps::state_reflection(e.dps, code);
    const double g = db_to_amplitude(6.0);
    const double want = std::sqrt(path_loss(1.0, lb) * path_loss(2.5, lb)) * g * g * g * g * std::abs(gamma);
    EXPECT_NEAR(std::abs(am_coefficient(tx, rx, e, code, lb)), want, 1e-12 * want);
}

TEST(Am, HalfWavelengthFlipsPhase)
{
    const auto p = ideal();
    const auto e = element(Vec3::Zero(), {}, p);
    const Pose tx = pose({1.0, 0, 0}, {0, 0, 180}, p);
    const Vec3 dir = Vec3(1.0, 0.3, 0.0).normalized();
    const Pose rx1 = pose(3.0 * dir, {0, 0, 196.699}, p);
    Pose rx2 = rx1;
    rx2.position += 0.5 * lb.wavelength() * dir;
    const auto code = dps::StateCode::from_string("0000");
    const cplx a = am_coefficient(tx, rx1, e, code, lb), b = am_coefficient(tx, rx2, e, code, lb);
    EXPECT_NEAR(std::abs(wrap_deg(rad_to_deg(std::arg(b / a)) - 180.0)), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(b) / std::abs(a), 3.0 / (3.0 + 0.5 * lb.wavelength()), 1e-9);
}

TEST(Am, PolarizationNullAtAnySingleAntenna)
{
    const auto p = ideal();
    auto b = bench(p);
    const auto code = dps::StateCode::from_string("0000");
    const double matched = std::abs(am_coefficient(b.tx, b.rx, b.e, code, lb));
    auto rolled_tx = b;
    rolled_tx.tx.orientation = antenna::roll_about_boresight(b.tx.orientation, 90.0);
    auto rolled_rx = b;
    rolled_rx.rx.orientation = antenna::roll_about_boresight(b.rx.orientation, 90.0);
    auto rolled_e = b;
    rolled_e.e.polarization_variant = PolarizationVariant::deg90;
    EXPECT_LT(std::abs(am_coefficient(rolled_tx.tx, rolled_tx.rx, rolled_tx.e, code, lb)), 1e-12 * matched);
    EXPECT_LT(std::abs(am_coefficient(rolled_rx.tx, rolled_rx.rx, rolled_rx.e, code, lb)), 1e-12 * matched);
    EXPECT_LT(std::abs(am_coefficient(rolled_e.tx, rolled_e.rx, rolled_e.e, code, lb)), 1e-12 * matched);
}

TEST(Plate, MainLobeAtSpecular)
{
    // ~10 wavelength plate so the lobe is narrow
    const auto e = element(Vec3::Zero(), {}, ideal(), 0.85);
    const AnglePair inc{10.0, 30.0};
    const AnglePair mirror{-10.0, -30.0};
    double best = -1.0;
    AnglePair arg{};
    for (double t = -80.0; t <= 80.0; t += 0.25)
        for (double f = -85.0; f <= 85.0; f += 0.25)
        {
            const double n = plate_scattering_matrix(e, inc, {t, f}, lb).norm();
            if (n > best)
            {
                best = n;
                arg = {t, f};
            }
        }
    EXPECT_NEAR(arg.theta, mirror.theta, 0.5);
    EXPECT_NEAR(arg.phi, mirror.phi, 0.5);
    EXPECT_NEAR(plate_scattering_matrix(e, inc, mirror, lb).norm(), best, 0.01 * best);
}

TEST(Plate, MagnitudeAtSpecularMatchesArea)
{
    // |M| at normal incidence / backscatter = 4 pi A / lambda^2
    const auto e = element(Vec3::Zero(), {}, ideal(), 0.2);
    const Mat2c m = plate_scattering_matrix(e, {0, 0}, {0, 0}, lb);
    const double want = 4.0 * std::numbers::pi * 0.04 / (lb.wavelength() * lb.wavelength());
    EXPECT_NEAR(std::abs(m(0, 0)), want, 1e-9 * want);
    EXPECT_NEAR(std::abs(m(1, 1)), want, 1e-9 * want);
    EXPECT_NEAR(std::abs(m(0, 1)), 0.0, 1e-9 * want);
}

TEST(Plate, SincNull)
{
    // normal incidence; u = k w s_y / 2 = pi
    const double w = 0.3;
    const auto e = element(Vec3::Zero(), {}, ideal(), w);
    const double sy = 2.0 * std::numbers::pi / (lb.wave_number() * w);
    const AnglePair sca{0.0, rad_to_deg(std::asin(sy))};
    const double peak = plate_scattering_matrix(e, {0, 0}, {0, 0}, lb).norm();
    EXPECT_LT(plate_scattering_matrix(e, {0, 0}, sca, lb).norm(), 1e-12 * peak);
}

TEST(Plate, ReciprocityTranspose)
{
    const auto e = element(Vec3::Zero(), {10, -20, 35}, ideal(), 0.1);
    const antenna::Mat3 R = antenna::rotation_matrix(e.pose.orientation);
    for (std::uint64_t i = 0; i < 100; ++i)
    {
        // directions in the plate's front hemisphere
        const Vec3 a = (R.col(0) + 0.8 * Vec3(rng::uniform(2, 0, i) - 0.5, rng::uniform(2, 1, i) - 0.5, rng::uniform(2, 2, i) - 0.5)).normalized();
        const Vec3 b = (R.col(0) + 0.8 * Vec3(rng::uniform(2, 3, i) - 0.5, rng::uniform(2, 4, i) - 0.5, rng::uniform(2, 5, i) - 0.5)).normalized();
        const auto A = antenna::angles_of(a), B = antenna::angles_of(b);
        const Mat2c m1 = plate_scattering_matrix(e, A, B, lb), m2 = plate_scattering_matrix(e, B, A, lb);
        EXPECT_LT((m1 - m2.transpose()).norm(), 1e-9 * m1.norm() + 1e-15);
        const Mat2c r1 = reflection_polarization_matrix(e, A, B), r2 = reflection_polarization_matrix(e, B, A);
        EXPECT_LT((r1 - r2.transpose()).norm(), 1e-9);
    }
}

TEST(Plate, BackIncidenceThrows)
{
    const auto e = element(Vec3::Zero(), {}, ideal());
    EXPECT_THROW(plate_scattering_matrix(e, {0, 180}, {0, 0}, lb), BackIncidence);
    auto b = bench(ideal());
    b.tx.position = Vec3(-0.5, 0, 0);
    EXPECT_THROW(sm_coefficient(b.tx, b.rx, b.e, {}, lb), BackIncidence);
}

TEST(Reflection, PecMatrix)
{
    const Mat2c m = plate_reflection_matrix();
    EXPECT_EQ(m(0, 0), cplx(-1.0));
    EXPECT_EQ(m(1, 1), cplx(1.0));
    EXPECT_EQ(m(0, 1), cplx(0.0));
    EXPECT_EQ(m(1, 0), cplx(0.0));
}

TEST(Reflection, MirrorImageOfVerticalLink)
{
    // plate in the y-z plane, vertical source and observer: the mirrored
    // vertical field keeps its orientation, so the co-pol SM chain equals
    // the LoS chain towards the image source (|.| = gains product)
    const auto p = ideal();
    auto b = bench(p);
    const Mat2c J = reflection_polarization_matrix(b.e, {0, 0}, {0, 0});
    const Mat2c M_d = polarization_flip();
    const double g = db_to_amplitude(6.0);
    antenna::Polarimetric e_v(g, 0.0);
    const cplx chain = (e_v.transpose() * M_d * J * M_d * e_v)(0, 0);
    EXPECT_NEAR(std::abs(chain), g * g, 1e-12);
    // orthogonal rays in the plane: unit-norm, orthogonal map
    const Mat2c K = reflection_polarization_matrix(b.e, {20, 30}, {-10, -40});
    EXPECT_NEAR((K.adjoint() * K - Mat2c::Identity()).norm(), 0.0, 1e-12);
}

TEST(Sm, ZeroTuningAndStateIndependence)
{
    auto b = bench(leaky());
    EXPECT_EQ(sm_coefficient(b.tx, b.rx, b.e, {0.0, 0.0}, lb), cplx(0.0));
    const cplx ref = sm_coefficient(b.tx, b.rx, b.e, {}, lb);
    for (std::uint32_t c = 0; c < 16; ++c)
    {
        const auto t = element_terms(b.tx, b.rx, b.e, dps::StateCode::from_index(c, 4), {}, lb);
        EXPECT_EQ(t.sm, ref);
        EXPECT_EQ(t.los, los_coefficient(b.tx, b.rx, lb));
    }
}

TEST(Sm, DoublingPlateQuadruplesScatteredTerm)
{
    const auto p = ideal();
    // specular geometry: tx and rx mirror images across the plate normal
    const Pose tx = pose({1.0, -0.3, 0}, {0, 0, 163.3}, p);
    const Pose rx = pose({1.0, 0.3, 0}, {0, 0, -163.3}, p);
    auto small = element(Vec3::Zero(), {}, p, 0.05);
    auto big = element(Vec3::Zero(), {}, p, 0.10);
    const SmTuning scatter_only{1.0, 0.0};
    EXPECT_NEAR(std::abs(sm_coefficient(tx, rx, big, scatter_only, lb)) / std::abs(sm_coefficient(tx, rx, small, scatter_only, lb)),
                4.0, 1e-9);
}

TEST(Element, TermsSumAndLosOnly)
{
    auto b = bench(leaky());
    const auto code = dps::StateCode::from_string("1010");
    const auto t = element_terms(b.tx, b.rx, b.e, code, {}, lb);
    EXPECT_NEAR(std::abs(element_coefficient(b.tx, b.rx, b.e, code, {}, lb) - (t.los + t.am + t.sm)), 0.0,
                1e-15 * std::abs(t.total()));
    auto dead = b.e;
    dead.dps.gamma0_db = -600.0;
    const cplx only = element_coefficient(b.tx, b.rx, dead, code, {0.0, 0.0}, lb);
    EXPECT_LT(rel(only, los_coefficient(b.tx, b.rx, lb)), 1e-15);
}

TEST(Element, TabletopInterferenceSpread)
{
    // single element facing +y at the origin, tx and rx 0.25 m away facing it
    const auto p = ideal();
    const Pose tx = pose({-0.05, 0.25, 0}, {0, 0, -90}, p), rx = pose({0.05, 0.25, 0}, {0, 0, -90}, p);
    auto e = element(Vec3::Zero(), {0, 0, 90}, p);
    auto spread = [&](const RisElement &el)
    {
        double lo = 1e300, hi = -1e300;
        for (std::uint32_t c = 0; c < 16; ++c)
        {
            const double q = gain_db(element_coefficient(tx, rx, el, dps::StateCode::from_index(c, 4), {}, lb), lb);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        return hi - lo;
    };
    EXPECT_GT(spread(e), 3.0);
    auto turned = e;
    turned.pose.orientation = antenna::rotate_about_global(e.pose.orientation, Vec3::UnitY(), 90.0);
    EXPECT_LT(spread(turned), 0.5);
}

TEST(Array, EmptyIsLos)
{
    auto b = bench(leaky());
    EXPECT_EQ(array_coefficient(b.tx, b.rx, {}, StateMatrix(0, 4), {}, lb), los_coefficient(b.tx, b.rx, lb));
    std::vector<RisElement> one{b.e};
    EXPECT_THROW(array_coefficient(b.tx, b.rx, one, StateMatrix(2, 4), {}, lb), DimensionMismatch);
    EXPECT_THROW(array_coefficient(b.tx, b.rx, one, StateMatrix(1, 3), {}, lb), DimensionMismatch);
}

TEST(Array, SuperpositionOfElements)
{
    const auto p = leaky();
    const Pose tx = pose({0.8, 0, 0}, {0, 0, 180}, p), rx = pose({0.8, 0.2, 0.05}, {0, 0, 180}, p);
    std::vector<RisElement> els{element({0, -0.03, 0}, {}, p), element({0, 0.03, 0.02}, {0, 0, 5}, p)};
    const StateMatrix s(4, {5, 12});
    const cplx los = los_coefficient(tx, rx, lb);
    const cplx want = los + (element_coefficient(tx, rx, els[0], s.state_code(0), {}, lb) - los) +
                      (element_coefficient(tx, rx, els[1], s.state_code(1), {}, lb) - los);
    EXPECT_LT(rel(array_coefficient(tx, rx, els, s, {}, lb), want), 1e-12);
}

TEST(Array, EqualPathPairAddsCoherently)
{
    // two elements mirror-symmetric about the tx-rx axis see equal paths
    const auto p = ideal();
    const Pose tx = pose({1.0, 0, 0}, {0, 0, 180}, p), rx = pose({1.5, 0, 0}, {0, 0, 180}, p);
    std::vector<RisElement> pair{element({0, -0.05, 0}, {}, p), element({0, 0.05, 0}, {}, p)};
    const StateMatrix s(2, 4, 3);
    const cplx a0 = am_coefficient(tx, rx, pair[0], s.state_code(0), lb);
    const cplx a1 = am_coefficient(tx, rx, pair[1], s.state_code(1), lb);
    EXPECT_LT(rel(a0, a1), 1e-9);
}

TEST(Array, InverseSquareScaling)
{
    // scaling every position (and plate) by alpha scales LoS by 1/alpha and each RIS term by 1/alpha^2
    const auto p = ideal();
    const double alpha = 2.0;
    auto b = bench(p);
    auto s = b;
    s.tx.position *= alpha;
    s.rx.position *= alpha;
    const auto code = dps::StateCode::from_string("0110");
    EXPECT_NEAR(std::abs(los_coefficient(s.tx, s.rx, lb)) / std::abs(los_coefficient(b.tx, b.rx, lb)), 1.0 / alpha, 1e-9);
    EXPECT_NEAR(std::abs(am_coefficient(s.tx, s.rx, s.e, code, lb)) / std::abs(am_coefficient(b.tx, b.rx, b.e, code, lb)),
                1.0 / (alpha * alpha), 1e-9);
    const SmTuning refl{0.0, 1.0};
    EXPECT_NEAR(std::abs(sm_coefficient(s.tx, s.rx, s.e, refl, lb)) / std::abs(sm_coefficient(b.tx, b.rx, b.e, refl, lb)),
                1.0 / (alpha * alpha), 1e-9);
}

TEST(Array, OneWavelengthAlongRayKeepsPhase)
{
    const auto p = ideal();
    auto b = bench(p);
    auto moved = b;
    const Vec3 dir = b.rx.position.normalized();
    moved.rx.position += lb.wavelength() * dir;
    const auto code = dps::StateCode::from_string("0000");
    const cplx r = am_coefficient(moved.tx, moved.rx, moved.e, code, lb) / am_coefficient(b.tx, b.rx, b.e, code, lb);
    EXPECT_NEAR(std::arg(r), 0.0, 1e-6);
}

TEST(LinkModel, MatchesDirectEvaluation)
{
    const auto p = leaky();
    Scene sc;
    sc.tx = pose({0.8, 0, 0}, {0, 0, 180}, p, 12.0);
    sc.rx = pose({0.8, 0.3, 0.1}, {0, 0, 180}, p, -40.0);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
        {
            auto e = element({0, 0.0428 * (c - 1), 0.0428 * (1 - r)}, {}, p);
            e.pose.initial_phase_deg = 30.0 * (r * 3 + c);
            sc.elements.push_back(e);
        }
    sc.elements[4].polarization_variant = PolarizationVariant::deg45;
    const LinkModel m(sc);
    for (std::uint64_t i = 0; i < 200; ++i)
    {
        StateMatrix s(9, 4);
        for (std::size_t n = 0; n < 9; ++n)
            s.set_code(n, static_cast<std::uint32_t>(rng::uniform_index(3, 0, i * 9 + n, 16)));
        if (i % 2)
            for (std::size_t n = 0; n < 9; ++n)
                s.set_variant(n, static_cast<PolarizationVariant>(rng::uniform_index(3, 1, i * 9 + n, 3)));
        std::vector<RisElement> els = sc.elements;
        if (s.has_variants())
            for (std::size_t n = 0; n < 9; ++n)
                els[n].polarization_variant = s.variant(n);
        const cplx direct = array_coefficient(sc.tx, sc.rx, els, s, sc.tuning, sc.budget);
        EXPECT_LT(rel(m.coefficient(s), direct), 1e-12);
        EXPECT_NEAR(m.quality_db(s), gain_db(direct, sc.budget), 1e-9);
    }
    EXPECT_THROW(m.coefficient(StateMatrix(8, 4)), DimensionMismatch);
    EXPECT_THROW(m.coefficient(StateMatrix(9, 3)), DimensionMismatch);
}

TEST(LinkModel, NoiseKeyedByEvaluation)
{
    auto b = bench(leaky());
    Scene sc{b.tx, b.rx, {b.e}, {}, lb, {true, 1.0, 9}};
    const LinkModel m(sc);
    const StateMatrix s(1, 4);
    EXPECT_EQ(m.quality_db(s, 3), m.quality_db(s, 3));
    EXPECT_NE(m.quality_db(s, 3), m.quality_db(s, 4));
    EXPECT_NEAR(m.quality_db(s, 3) - m.noise_db(3), gain_db(m.coefficient(s), lb), 1e-12);
    double sum = 0.0, sq = 0.0;
    for (std::uint64_t i = 0; i < 20000; ++i)
    {
        const double n = m.noise_db(i);
        sum += n;
        sq += n * n;
    }
    EXPECT_NEAR(sum / 20000, 0.0, 0.05);
    EXPECT_NEAR(std::sqrt(sq / 20000), 1.0, 0.05);
}

TEST(Fraunhofer, Warnings)
{
    auto b = bench(ideal());
    std::vector<RisElement> one{b.e};
    EXPECT_TRUE(fraunhofer_warnings(b.tx, b.rx, one, 0.05, lb).empty());
    // 2 D^2 / lambda for D = 0.5 m is ~5.8 m
    EXPECT_EQ(fraunhofer_warnings(b.tx, b.rx, one, 0.5, lb).size(), 3u);
}
