#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmforge/geom.hpp"
#include "gmforge/gmtheory.hpp"
#include "gmforge/report.hpp"

namespace gmforge::recipes {

using arith::Coeff;
using arith::Polynomial;
using geom::PointP;
using geom::RationalMap;
using geom::Scheme;

/// Outcome of the plane-system stage: the six base points, the quartic
/// system double at the first point, and its image surface in P^6.
struct EdgeStage {
    arith::RingPtr plane;
    std::vector<std::vector<Coeff>> base_points;  // q0 (double), q1..q5
    std::vector<Polynomial> quartics;             // the 7 forms
    RationalMap to_p6;
    Scheme surface;  // smooth, degree 7, sectional genus 2, 8 quadrics
};

/// The nodal projection stage: E in P^5 plus the composed map from the plane.
struct NodalStage {
    PointP center;           // general point on one secant line
    RationalMap plane_to_p5; // quartic system followed by the projection
    Scheme surface;          // degree 7, genus 2, {2 quadrics, 5 cubics}, one node
};

struct ScrollStage {
    Scheme curve;   // quintic elliptic curve C in P^5, spanning a P^4
    Scheme scroll;  // cubic scroll B with B meeting E along C
};

struct SempleStage {
    RationalMap map;  // P^5 -> P^8 by the 9 quadrics through B
    Scheme image;     // hyperplane section of G(1,4): dim 5, degree 5, 5 quadrics
};

struct TSurfaceStage {
    Scheme surface;  // degree 11, genus 3, 16 quadrics, one node
    std::int64_t nodes = 0;
};

struct FourfoldStage {
    Scheme fourfold;  // quadratic section of the fivefold through the surface
    gmtheory::GMRecord record;
};

/// Full pipeline state; stages fill in order. Identical seeds give
/// bit-identical reports.
struct Pipeline {
    SessionConfig config;
    report::Report rep;
    std::optional<EdgeStage> edge;
    std::optional<NodalStage> nodal;
    std::optional<ScrollStage> scroll;
    std::optional<SempleStage> semple;
    std::optional<TSurfaceStage> tsurface;
    std::optional<FourfoldStage> fourfold;
};

/// Runs stages up to `last` (one of: edge, nodal, scroll, semple, t-surface,
/// gm4, all). Each stage retries with fresh draws when a general-position
/// check fails, and records every expected-vs-computed line in the report.
Pipeline run_pipeline(const SessionConfig& config, const std::string& last = "all");

// ---- congruence counting ---------------------------------------------------

struct CongruenceEntry {
    std::int64_t curve_degree = 0;
    std::int64_t secancy = 0;
    std::int64_t multiplicity = 0;
};

struct CongruenceCensus {
    std::vector<Coeff> point;  // the chosen point on the hosting variety
    std::int64_t total = 0;    // degree of the zero-dimensional line scheme
    std::vector<std::vector<Coeff>> rational_lines;  // direction points, one per line
    std::vector<CongruenceEntry> classified;
    std::int64_t unclassified = 0;  // scheme mass at non-split lines
};

/// Lines inside V through q: the incidence conditions cut a
/// zero-dimensional scheme in the direction space; its degree is the count.
CongruenceCensus lines_through_point(const Scheme& V, const PointP& q, Rng& rng);

/// Classifies each rational line L through f(p) by the degree of its curve
/// preimage under f and that curve's intersection length with S.
void classify_congruence(CongruenceCensus& census, const RationalMap& f, const Scheme& S,
                         Rng& rng);

/// The quadrics through the image of f, computed exactly as the kernel of
/// "substitute then reduce modulo the source": the degree-2 part of the
/// image ideal, and the host variety for the stretch-tier line census.
Scheme image_by_quadrics(const RationalMap& f);

}  // namespace gmforge::recipes
