#include "cstar_frames/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linalg.hpp"

namespace cstar {

namespace {

std::string verdict(const char* name, bool value) { return std::string(name) + "=" + (value ? "true" : "false"); }

/// Zero floor for elements built from 1_A: anything below rel_tol * ||1_A||
/// is rounding noise.
Tolerance unit_scaled(const Tolerance& tol) { return {tol.rel_tol, std::max(tol.abs_tol, tol.scaled(1.0))}; }

/// Complex matrix of a -> (sum_j a_j x_j) restricted to algebra block k.
/// Column (j, r, s) is the image of the coefficient tuple whose only nonzero
/// entry is the matrix unit E_rs in block k of a_j.
CMatrix synthesis_operator_block(const FrameSystem& frame, std::size_t k) {
    const auto& sig = frame.signature();
    const int n = sig.block_size(k);
    const int m = frame.size();
    const int d = frame.rank();
    CMatrix op = CMatrix::Zero(d * n * n, m * n * n);
    std::vector<AlgebraElement> coeffs(static_cast<std::size_t>(m), AlgebraElement(sig));
    for (int j = 0; j < m; ++j)
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                auto& a = coeffs[static_cast<std::size_t>(j)];
                a.block(k)(r, s) = 1.0;
                const auto image = synthesize(frame, coeffs);
                a.block(k)(r, s) = 0.0;
                const int col = (j * n + r) * n + s;
                for (int i = 0; i < d; ++i)
                    for (int p = 0; p < n; ++p)
                        for (int q = 0; q < n; ++q) op((i * n + p) * n + q, col) = image[i].block(k)(p, q);
            }
    return op;
}

std::vector<AlgebraElement> coefficients_from_column(const FrameSystem& frame, std::size_t k, const CVector& column) {
    const auto& sig = frame.signature();
    const int n = sig.block_size(k);
    std::vector<AlgebraElement> coeffs(static_cast<std::size_t>(frame.size()), AlgebraElement(sig));
    for (int j = 0; j < frame.size(); ++j)
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) coeffs[static_cast<std::size_t>(j)].block(k)(r, s) = column((j * n + r) * n + s);
    return coeffs;
}

struct KernelBlock {
    std::size_t block;
    CMatrix basis; // columns span the kernel of this block's synthesis operator
};

std::vector<KernelBlock> synthesis_kernel(const FrameSystem& frame, const Tolerance& tol) {
    const auto& sig = frame.signature();
    std::vector<CMatrix> ops;
    for (std::size_t k = 0; k < sig.block_count(); ++k) ops.push_back(synthesis_operator_block(frame, k));

    std::vector<Eigen::VectorXd> values;
    std::vector<CMatrix> right;
    double largest = 0.0;
    for (const auto& op : ops) {
        if (op.cols() <= 64) {
            Eigen::JacobiSVD<CMatrix> svd(op, Eigen::ComputeFullV);
            values.push_back(svd.singularValues());
            right.push_back(svd.matrixV());
        } else {
            Eigen::BDCSVD<CMatrix> svd(op, Eigen::ComputeFullV);
            values.push_back(svd.singularValues());
            right.push_back(svd.matrixV());
        }
        if (values.back().size() > 0) largest = std::max(largest, values.back()(0));
    }

    std::vector<KernelBlock> kernel;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        Eigen::Index rank = 0;
        if (largest > tol.abs_tol)
            while (rank < values[k].size() && values[k](rank) > tol.rel_tol * largest) ++rank;
        const Eigen::Index nullity = ops[k].cols() - rank;
        if (nullity > 0) kernel.push_back({k, right[k].rightCols(nullity)});
    }
    return kernel;
}

} // namespace

FrameVerdict is_frame(const FrameSystem& frame, const Tolerance& tol) {
    FrameVerdict v;
    v.bounds = frame_bounds(frame, tol);
    const auto& b = v.bounds;
    v.is_frame = b.upper > tol.abs_tol && b.lower > tol.rel_tol * b.upper;
    v.is_tight = v.is_frame && (b.upper - b.lower) <= tol.rel_tol * b.upper;
    v.is_parseval = v.is_tight && std::abs(b.upper - 1.0) <= tol.rel_tol;
    return v;
}

std::vector<std::vector<AlgebraElement>> synthesis_kernel_basis(const FrameSystem& frame, const Tolerance& tol) {
    std::vector<std::vector<AlgebraElement>> basis;
    for (const auto& kb : synthesis_kernel(frame, tol))
        for (Eigen::Index c = 0; c < kb.basis.cols(); ++c)
            basis.push_back(coefficients_from_column(frame, kb.block, kb.basis.col(c)));
    return basis;
}

OmegaVerdict is_omega_independent(const FrameSystem& frame, const Tolerance& tol) {
    OmegaVerdict v;
    const auto kernel = synthesis_kernel(frame, tol);
    v.independent = kernel.empty();
    if (!v.independent) v.kernel_witness = coefficients_from_column(frame, kernel.front().block, kernel.front().basis.col(0));
    return v;
}

bool is_biorthogonal(const FrameSystem& frame, const FrameSystem& other, const Tolerance& tol) {
    require_same_signature(frame.signature(), other.signature(), "is_biorthogonal");
    if (frame.rank() != other.rank() || frame.size() != other.size())
        throw StructuralError("is_biorthogonal: systems differ in rank or size");
    double largest_x = 0.0;
    double largest_y = 0.0;
    for (const auto& x : frame.vectors()) largest_x = std::max(largest_x, vector_norm(x));
    for (const auto& y : other.vectors()) largest_y = std::max(largest_y, vector_norm(y));
    const double threshold = tol.scaled(std::max(1.0, largest_x * largest_y));

    const auto one = AlgebraElement::identity(frame.signature());
    for (int i = 0; i < frame.size(); ++i)
        for (int j = 0; j < other.size(); ++j) {
            auto deviation = inner_product(frame[i], other[j]);
            if (i == j) deviation -= one;
            if (norm(deviation) > threshold) return false;
        }
    return true;
}

BiorthogonalVerdict has_biorthogonal_sequence(const FrameSystem& frame, const Tolerance& tol) {
    // <x_i, y_j> = (X Y^*)_ij, so a biorthogonal Y solves X Z = I_m with Z = Y^*.
    BiorthogonalVerdict v;
    const auto x_blocks = flatten(frame.synthesis_matrix());
    double residual_sq = 0.0;
    double rhs_sq = 0.0;
    std::vector<CMatrix> y_blocks;
    for (const auto& xk : x_blocks) {
        const CMatrix rhs = CMatrix::Identity(xk.rows(), xk.rows());
        Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(xk);
        cod.setThreshold(tol.rel_tol);
        const CMatrix z = cod.solve(rhs);
        residual_sq += (xk * z - rhs).squaredNorm();
        rhs_sq += rhs.squaredNorm();
        y_blocks.push_back(z.adjoint());
    }
    v.residual = std::sqrt(residual_sq / rhs_sq);
    v.exists = v.residual <= std::max(tol.rel_tol, 1e-7);
    if (v.exists) {
        const auto y = unflatten(frame.signature(), y_blocks);
        std::vector<ModuleVector> rows;
        for (int j = 0; j < y.domain_rank(); ++j) rows.push_back(y.row(j));
        v.witness = FrameSystem(frame.signature(), frame.rank(), std::move(rows));
    }
    return v;
}

LemmaVerdict is_exact_by_lemma(const FrameSystem& frame, const Tolerance& tol) {
    if (!is_frame(frame, tol).is_frame) throw DomainError("is_exact_by_lemma: not a frame");
    const auto dual = canonical_dual(frame, tol);
    const auto one = AlgebraElement::identity(frame.signature());
    const auto floor = unit_scaled(tol);
    LemmaVerdict v;
    v.exact = true;
    for (int l = 0; l < frame.size(); ++l) {
        auto complement = one - inner_product(frame[l], dual[l]);
        const bool removable = is_invertible(complement, floor);
        v.exact = v.exact && !removable;
        v.per_index.push_back({l, std::move(complement), removable});
    }
    return v;
}

RemovalVerdict is_exact_by_removal(const FrameSystem& frame, const Tolerance& tol) {
    if (!is_frame(frame, tol).is_frame) throw DomainError("is_exact_by_removal: not a frame");
    RemovalVerdict v;
    v.exact = true;
    for (int l = 0; l < frame.size(); ++l) {
        const bool removable = frame.size() > 1 && is_frame(frame.without(l), tol).is_frame;
        v.removable.push_back(removable);
        if (removable && !v.removable_index) v.removable_index = l;
        v.exact = v.exact && !removable;
    }
    return v;
}

FrankLarsonVerdict is_riesz_frank_larson(const FrameSystem& frame, const Tolerance& tol) {
    FrankLarsonVerdict v;
    double largest = 0.0;
    for (const auto& x : frame.vectors()) largest = std::max(largest, vector_norm(x));
    const double threshold = tol.scaled(largest);
    for (int j = 0; j < frame.size(); ++j)
        if (vector_norm(frame[j]) <= threshold) {
            v.zero_vector_index = j;
            return v;
        }

    // a -> a_j x_j is linear, so checking a basis of the kernel covers every
    // finitely supported vanishing combination.
    for (const auto& coeffs : synthesis_kernel_basis(frame, tol))
        for (int j = 0; j < frame.size(); ++j)
            if (vector_norm(coeffs[static_cast<std::size_t>(j)] * frame[j]) > threshold) {
                v.violation = FrankLarsonViolation{coeffs, j};
                return v;
            }
    v.riesz = true;
    return v;
}

bool is_modular_riesz(const FrameSystem& frame, const Tolerance& tol) {
    return frame.size() == frame.rank() && map_invertible(frame.synthesis_matrix(), tol);
}

ClassificationReport classify(const FrameSystem& frame, const Tolerance& tol) {
    ClassificationReport r;
    const auto fv = is_frame(frame, tol);
    r.is_bessel = fv.is_bessel;
    r.is_frame = fv.is_frame;
    r.is_tight = fv.is_tight;
    r.is_parseval = fv.is_parseval;
    r.bounds = fv.bounds;

    const auto omega = is_omega_independent(frame, tol);
    r.is_omega_independent = omega.independent;
    r.witnesses.kernel_element = omega.kernel_witness;

    auto biorth = has_biorthogonal_sequence(frame, tol);
    r.has_biorthogonal_sequence = biorth.exists;
    r.witnesses.biorthogonal_sequence = std::move(biorth.witness);

    const auto fl = is_riesz_frank_larson(frame, tol);
    r.is_riesz_frank_larson = fl.riesz;
    r.witnesses.frank_larson_violation = fl.violation;

    r.is_modular_riesz = is_modular_riesz(frame, tol);

    if (r.is_frame) {
        r.is_biorthogonal_to_canonical_dual = is_biorthogonal(frame, canonical_dual(frame, tol), tol);

        const auto lemma = is_exact_by_lemma(frame, tol);
        const auto removal = is_exact_by_removal(frame, tol);
        r.is_exact_by_lemma = lemma.exact;
        r.is_exact_by_removal = removal.exact;
        r.witnesses.removable_index = removal.removable_index;
        for (const auto& entry : lemma.per_index)
            if (!entry.removable) r.witnesses.non_invertible_complements.push_back(entry);

        for (const auto& entry : lemma.per_index)
            if (entry.removable != removal.removable[static_cast<std::size_t>(entry.index)])
                throw ConsistencyError("removal lemma at index " + std::to_string(entry.index),
                                       verdict("complement_invertible", entry.removable),
                                       verdict("removal_leaves_frame",
                                               removal.removable[static_cast<std::size_t>(entry.index)]));

        const std::pair<const char*, bool> equivalent[] = {
            {"is_omega_independent", r.is_omega_independent},
            {"is_biorthogonal_to_canonical_dual", r.is_biorthogonal_to_canonical_dual},
            {"has_biorthogonal_sequence", r.has_biorthogonal_sequence},
        };
        for (const auto& [name, value] : equivalent)
            if (value != r.is_modular_riesz)
                throw ConsistencyError("modular Riesz equivalence", verdict("is_modular_riesz", r.is_modular_riesz),
                                       verdict(name, value));
    }

    if ((r.is_parseval && !r.is_tight) || (r.is_tight && !r.is_frame) || (r.is_frame && !r.is_bessel))
        throw ConsistencyError("frame hierarchy", verdict("is_parseval", r.is_parseval),
                               verdict("is_tight", r.is_tight) + " " + verdict("is_frame", r.is_frame));
    return r;
}

} // namespace cstar
