#include "doctest.h"
#include "approx.hpp"
#include "oracles.hpp"
#include "properties.hpp"

#include "ebsg/assembly.hpp"

#include <cmath>

using namespace ebsg;
using namespace ebsg::test;

namespace {

void require(const Check& c)
{
    INFO(c.name << ": worst " << c.worst << " vs tolerance " << c.tolerance);
    CHECK(c.pass);
}

}  // namespace

TEST_CASE("element pieces map local index to the piece on the element")
{
    CHECK(element_piece(0) == Piece::outer_right);
    CHECK(element_piece(1) == Piece::inner_right);
    CHECK(element_piece(2) == Piece::inner_left);
    CHECK(element_piece(3) == Piece::outer_left);
}

TEST_CASE("mass is symmetric positive definite")
{
    for (double ph : kTensionProducts) {
        require(check_mass_symmetric_positive(ph));
    }
    require(check_mass_symmetric_positive(30.0));
}

TEST_CASE("advection and diffusion satisfy integration by parts")
{
    for (double ph : kTensionProducts) {
        require(check_advection_by_parts(ph));
        require(check_diffusion_by_parts(ph));
    }
}

TEST_CASE("order 10 and order 20 quadrature agree")
{
    for (double ph : kTensionProducts) {
        require(check_quadrature_refinement(ph));
    }
}

TEST_CASE("strong tension is integrated panel-wise to full accuracy")
{
    CHECK(quadrature_panels(1e-3) == 1);
    CHECK(quadrature_panels(2.0) == 1);
    CHECK(quadrature_panels(5.0) == 3);
    CHECK(quadrature_panels(50.0) == 25);
    for (double ph : {10.0, 30.0, 50.0}) {
        require(check_quadrature_refinement(ph));
        require(check_advection_by_parts(ph));
        require(check_diffusion_by_parts(ph));
    }
}

TEST_CASE("small tension reproduces the cubic element mass")
{
    for (double h : {1.0, 100.0, 0.025}) {
        const BasisConstants k = derive_constants(1e-5 / h, h);
        const Matrix4 m = reference_element_matrices(k).mass;
        const Matrix4 cubic = cubic_element_mass(h);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                CAPTURE(r);
                CAPTURE(c);
                CHECK(m[r][c] == rel(cubic[r][c], 1e-6));
            }
        }
    }
}

TEST_CASE("assembled mass rows equal direct quadrature over the full overlap")
{
    const Mesh mesh(0.0, 12.0, 12);
    const BasisConstants k = derive_constants(0.9, mesh.spacing());
    const GlobalMatrices g = assemble_global(mesh, reference_element_matrices(k));
    REQUIRE(g.mass.size() == 15);
    for (int i = -1; i <= 13; ++i) {
        for (int j = std::max(-1, i - 3); j <= std::min(13, i + 3); ++j) {
            CAPTURE(i);
            CAPTURE(j);
            // Boundary functions only overlap part of their support inside [a, b].
            const bool interior = i >= 2 && i <= 10 && j >= 2 && j <= 10;
            if (interior) {
                CHECK(g.mass(i + 1, j + 1)
                      == rel(direct_mass_entry(mesh, k, i, j), 1e-12));
            }
        }
    }
}

TEST_CASE("global matrices are band-3, symmetric where expected, and translation invariant")
{
    const int n = 20;
    const Mesh mesh(0.0, 2.0, n);
    const BasisConstants k = derive_constants(3.0, mesh.spacing());
    const GlobalMatrices g = assemble_global(mesh, reference_element_matrices(k));
    for (const BandedMatrix* m : {&g.mass, &g.advection, &g.diffusion}) {
        REQUIRE(m->size() == n + 3);
        CHECK(m->bandwidth() == kSplineBandwidth);
        for (int i = 0; i + 4 < n + 3; ++i) {
            CHECK((*m)(i, i + 4) == 0.0);
            CHECK((*m)(i + 4, i) == 0.0);
        }
        // Rows 3..N-3 in basis numbering are rows 4..N-2 in storage.
        for (int r = 5; r <= n - 2; ++r) {
            for (int d = -3; d <= 3; ++d) {
                CHECK(std::abs((*m)(r, r + d) - (*m)(r - 1, r - 1 + d)) <= 1e-13 * m->norm_inf());
            }
        }
    }
    for (int i = 0; i < n + 3; ++i) {
        for (int j = 0; j < n + 3; ++j) {
            CHECK(std::abs(g.mass(i, j) - g.mass(j, i)) <= 1e-13 * std::abs(g.mass(i, j)));
        }
    }
}

TEST_CASE("interior rows of B + B^T sum to zero")
{
    const int n = 16;
    const Mesh mesh(0.0, 16.0, n);
    const BasisConstants k = derive_constants(0.3, mesh.spacing());
    const GlobalMatrices g = assemble_global(mesh, reference_element_matrices(k));
    for (int r = 4; r <= n - 2; ++r) {
        double sum = 0.0;
        for (int c = 0; c < n + 3; ++c) {
            sum += g.advection(r, c) + g.advection(c, r);
        }
        CHECK(std::abs(sum) <= 1e-12);
    }
}

TEST_CASE("scaling h with p h fixed scales A by k, keeps B and scales C by 1/k")
{
    const double ph = 0.8;
    const Mesh base(0.0, 10.0, 10);
    const Mesh scaled(0.0, 37.0, 10);
    const double factor = scaled.spacing() / base.spacing();
    const BasisConstants k1 = derive_constants(ph / base.spacing(), base.spacing());
    const BasisConstants k2 = derive_constants(ph / scaled.spacing(), scaled.spacing());
    const GlobalMatrices g1 = assemble_global(base, reference_element_matrices(k1));
    const GlobalMatrices g2 = assemble_global(scaled, reference_element_matrices(k2));
    // Entries are compared relative to the largest entry of each matrix, since
    // the advection diagonal is zero up to rounding.
    const double mass_scale = factor * g1.mass.norm_inf();
    const double advection_scale = g1.advection.norm_inf();
    const double diffusion_scale = g1.diffusion.norm_inf() / factor;
    for (int i = 0; i < 13; ++i) {
        for (int j = std::max(0, i - 3); j <= std::min(12, i + 3); ++j) {
            CHECK(std::abs(g2.mass(i, j) - factor * g1.mass(i, j)) <= 1e-10 * mass_scale);
            CHECK(std::abs(g2.advection(i, j) - g1.advection(i, j)) <= 1e-10 * advection_scale);
            CHECK(std::abs(g2.diffusion(i, j) - g1.diffusion(i, j) / factor)
                  <= 1e-10 * diffusion_scale);
        }
    }
}

TEST_CASE("fewer than three elements is rejected")
{
    const BasisConstants k = derive_constants(1.0, 0.5);
    const ElementMatrices e = reference_element_matrices(k);
    CHECK_THROWS(assemble_global(Mesh(0.0, 1.0, 2), e));
    CHECK_NOTHROW(assemble_global(Mesh(0.0, 1.5, 3), e));
}
