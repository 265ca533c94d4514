#pragma once

#include "conelab/cone_ops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conelab {

/// Small non-polyhedral cone zoo backing the non-closed-sum gallery.
/// SecondOrder(d) is {x : x_1^2 + ... + x_{d-1}^2 <= x_d^2, x_d >= 0};
/// membership is exact for rational points via squared norms.
struct ZooCone {
    enum class Kind { Polyhedral, SecondOrder, Ray, Subspace };
    Kind kind = Kind::Polyhedral;
    PolyhedralCone poly;       // Polyhedral
    std::size_t soc_dim = 0;   // SecondOrder
    Vec ray_dir;               // Ray
    std::vector<Vec> basis;    // Subspace

    static ZooCone polyhedral(PolyhedralCone c);
    static ZooCone second_order(std::size_t d);
    static ZooCone ray(Vec v);
    static ZooCone subspace(std::size_t n, std::vector<Vec> basis);

    std::size_t dim() const;
    bool member(const Vec& x) const;

    /// Polar as a polyhedral cone when the zoo cone is polyhedral.
    std::optional<PolyhedralCone> polyhedral_polar() const;
};

struct ClosednessReport {
    enum class Status { Closed, NotClosedEvidence, UnsupportedPair };
    Status status = Status::UnsupportedPair;
    std::string note;

    // Closed, polyhedral route: the exactly-represented polar sum.
    std::optional<PolyhedralCone> polar_sum;

    // NotClosedEvidence: u_k in z1°, v_k in z2° with u_k + v_k -> w,
    // residuals strictly decreasing, components diverging, plus an exact
    // statement of why no decomposition of w exists.
    Vec w;
    std::vector<Vec> u_seq, v_seq;
    std::vector<Rat> residual_sq;        // |u_k + v_k - w|^2
    std::vector<Rat> component_norm_sq;  // |v_k|^2, diverging
    std::string infeasibility_certificate;
};

/// Decides (when it can) whether z1° + z2° is closed; for the
/// SecondOrder/tangent-plane gallery pair it produces the explicit
/// escaping sequence and the exact decomposition-infeasibility
/// certificate for w.
ClosednessReport sum_closedness_probe(const ZooCone& z1, const ZooCone& z2, const Vec& w,
                                      int k_max);

} // namespace conelab
