#include "conelab/zoo.hpp"

namespace conelab {

ZooCone ZooCone::polyhedral(PolyhedralCone c) {
    ZooCone z;
    z.kind = Kind::Polyhedral;
    z.poly = std::move(c);
    return z;
}

ZooCone ZooCone::second_order(std::size_t d) {
    if (d < 3) throw InputError("SecondOrder zoo cone requires dimension >= 3");
    ZooCone z;
    z.kind = Kind::SecondOrder;
    z.soc_dim = d;
    return z;
}

ZooCone ZooCone::ray(Vec v) {
    if (is_zero(v)) throw InputError("Ray zoo cone requires a nonzero direction");
    ZooCone z;
    z.kind = Kind::Ray;
    z.ray_dir = std::move(v);
    return z;
}

ZooCone ZooCone::subspace(std::size_t n, std::vector<Vec> basis) {
    for (const Vec& b : basis) {
        if (b.size() != n) throw InputError("Subspace zoo cone: basis dimension mismatch");
    }
    ZooCone z;
    z.kind = Kind::Subspace;
    z.basis = std::move(basis);
    if (z.basis.empty()) z.basis.push_back(zero_vec(n));
    return z;
}

std::size_t ZooCone::dim() const {
    switch (kind) {
        case Kind::Polyhedral: return poly.dim();
        case Kind::SecondOrder: return soc_dim;
        case Kind::Ray: return ray_dir.size();
        case Kind::Subspace: return basis.front().size();
    }
    return 0;
}

bool ZooCone::member(const Vec& x) const {
    switch (kind) {
        case Kind::Polyhedral:
            return poly.contains(x);
        case Kind::SecondOrder: {
            if (x.size() != soc_dim) throw InputError("zoo member: dimension mismatch");
            if (x.back() < 0) return false;
            Rat head = 0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) head += x[i] * x[i];
            return head <= x.back() * x.back();
        }
        case Kind::Ray: {
            // x = t * ray_dir for some t >= 0
            return PolyhedralCone::ray(ray_dir).contains(x) ;
        }
        case Kind::Subspace: {
            Mat m = basis;
            std::size_t r0 = rank(m);
            m.push_back(x);
            return rank(m) == r0;
        }
    }
    return false;
}

std::optional<PolyhedralCone> ZooCone::polyhedral_polar() const {
    switch (kind) {
        case Kind::Polyhedral:
            return polar(poly);
        case Kind::Ray:
            return polar(PolyhedralCone::ray(ray_dir));
        case Kind::Subspace: {
            std::vector<Vec> gens;
            for (const Vec& b : basis) {
                if (is_zero(b)) continue;
                gens.push_back(b);
                gens.push_back(neg(b));
            }
            return polar(PolyhedralCone::from_generators(dim(), gens));
        }
        case Kind::SecondOrder:
            return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// Is the 2-dimensional subspace z a tangent plane of the 3-dim SOC
// boundary?  Its normal must then lie on the cone boundary itself
// (p^2 + q^2 = s^2, s != 0).  Returns the normal b oriented into the
// lower halfspace, so b is a boundary ray of -SOC and the subspace
// polar is span{b}.
std::optional<Vec> soc_tangent_plane_normal(const ZooCone& z) {
    if (z.kind != ZooCone::Kind::Subspace || z.dim() != 3) return std::nullopt;
    Mat m = z.basis;
    if (rank(m) != 2) return std::nullopt;
    std::vector<Vec> normal = kernel_basis(z.basis, 3);
    if (normal.size() != 1) return std::nullopt;
    Vec b = normal[0];
    if (b[2] == 0) return std::nullopt;
    if (b[2] > 0) b = neg(b);
    if (b[0] * b[0] + b[1] * b[1] != b[2] * b[2]) return std::nullopt;
    return b;
}

ClosednessReport polyhedral_closed(const ZooCone& z1, const ZooCone& z2) {
    ClosednessReport rep;
    rep.status = ClosednessReport::Status::Closed;
    rep.polar_sum = minkowski_sum(*z1.polyhedral_polar(), *z2.polyhedral_polar());
    rep.note = "polyhedral polars: the sum is polyhedral, hence closed";
    return rep;
}

// z1 = SecondOrder(3), z2 = tangent plane with normal b = (p,q,-s),
// where p^2 + q^2 = s^2 and s > 0 (so b is a boundary ray of -SOC).
// z1° = -SOC, z2° = span{b}.  For w = u + t*b with u in -SOC the
// constraints are 2*gamma*t >= beta and t <= -w3/s, where
// gamma = <w, (p,q,s)> and beta = w1^2 + w2^2 - w3^2.  The polar of
// the sum is the single ray (p,q,s), so the closure is {gamma <= 0}
// and the non-closedness gap is exactly {gamma = 0, beta > 0}.
ClosednessReport soc_tangent_report(const Vec& b, const Vec& w, int k_max) {
    const Rat p = b[0], q = b[1], s = -b[2];
    const Vec r{p, q, s};  // tangency ray; generates the polar of the sum
    const Rat gamma = dot(w, r);
    const Rat beta = w[0] * w[0] + w[1] * w[1] - w[2] * w[2];

    ClosednessReport rep;
    rep.w = w;
    if (gamma != 0 || beta <= 0) {
        rep.status = ClosednessReport::Status::UnsupportedPair;
        rep.note = gamma > 0 ? "w lies outside the closure of the polar sum"
                             : "w decomposes exactly; it does not witness non-closedness";
        return rep;
    }

    rep.status = ClosednessReport::Status::NotClosedEvidence;
    rep.note = "second-order cone polar plus tangent-plane polar (a line) is not closed";
    rep.infeasibility_certificate =
        "any decomposition w = u + t*(" + to_string(p) + "," + to_string(q) + "," +
        to_string(-s) + ") with u in -SOC requires 2*<w,(p,q,s)>*t >= beta with "
        "<w,(p,q,s)> = 0 and beta = " + to_string(beta) + " > 0: infeasible for every t, "
        "while near-decompositions force t -> -infinity";

    // Approach w through w_k = w - (1/m)*(p,q,s), which has gamma_k < 0
    // and therefore decomposes exactly; m = 2^k shrinks the residual by
    // a factor of 4 per step while t_k diverges linearly in m.
    Rat m = 1;
    for (int k = 1; k <= k_max; ++k) {
        m *= 2;
        const Vec wk = sub(w, scale(Rat(1) / m, r));
        const Rat gamma_k = dot(wk, r);
        const Rat beta_k = wk[0] * wk[0] + wk[1] * wk[1] - wk[2] * wk[2];
        Rat t = beta_k / (2 * gamma_k);
        if (t * s > -wk[2]) t = -wk[2] / s;
        const Vec vk = scale(t, b);
        const Vec uk = sub(wk, vk);
        rep.u_seq.push_back(uk);
        rep.v_seq.push_back(vk);
        rep.residual_sq.push_back(norm_sq(sub(add(uk, vk), w)));
        rep.component_norm_sq.push_back(norm_sq(vk));
    }
    return rep;
}

} // namespace

ClosednessReport sum_closedness_probe(const ZooCone& z1, const ZooCone& z2, const Vec& w,
                                      int k_max) {
    if (z1.dim() != z2.dim()) throw InputError("sum_closedness_probe: dimension mismatch");
    if (w.size() != z1.dim()) throw InputError("sum_closedness_probe: w dimension mismatch");

    const bool p1 = z1.polyhedral_polar().has_value();
    const bool p2 = z2.polyhedral_polar().has_value();
    if (p1 && p2) return polyhedral_closed(z1, z2);

    const ZooCone& soc = p1 ? z2 : z1;
    const ZooCone& other = p1 ? z1 : z2;
    if (soc.kind == ZooCone::Kind::SecondOrder && soc.dim() == 3) {
        if (other.kind == ZooCone::Kind::Ray) {
            // ray polar is a halfspace; -SOC + halfspace is a halfspace
            // (the supremum of <k, r> over -SOC is 0 or infinity, attained)
            ClosednessReport rep;
            rep.status = ClosednessReport::Status::Closed;
            rep.note = "polar of a ray is a halfspace; -SOC plus a halfspace is closed";
            return rep;
        }
        if (auto b = soc_tangent_plane_normal(other)) {
            ClosednessReport rep = soc_tangent_report(*b, w, k_max);
            if (p1) std::swap(rep.u_seq, rep.v_seq);  // keep u_k in z1°, v_k in z2°
            return rep;
        }
    }
    ClosednessReport rep;
    rep.status = ClosednessReport::Status::UnsupportedPair;
    rep.note = "no decision procedure implemented for this zoo combination";
    return rep;
}

} // namespace conelab
