#include "onebit/designers.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace onebit {

void IterControl::validate() const {
  if (!(rel_tol_delta > 0.0 && rel_tol_delta < 1.0))
    throw InvalidArgument("relative tolerance delta must lie in (0, 1)");
  if (max_iters_k < 1) throw InvalidArgument("max iterations K must be >= 1");
}

double relative_change(double rho_new, double rho_old) {
  if (rho_old == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(rho_new - rho_old) / std::abs(rho_old);
}

namespace {

SpinVector spins_from_index(Eigen::Index n, std::uint64_t index) {
  SpinVector::Storage s(n);
  s[0] = 1;
  for (Eigen::Index k = 1; k < n; ++k) s[k] = ((index >> (k - 1)) & 1u) ? -1 : 1;
  return SpinVector(std::move(s));
}

}  // namespace

DesignResult exhaustive_search(const SystemParams& params, const ChannelMatrix& h) {
  params.validate();
  h.check_shape(params);
  if (params.n_t + params.n_r > kExhaustiveMaxAntennas)
    throw SizeGuardError("exhaustive search limited to n_t + n_r <= " +
                         std::to_string(kExhaustiveMaxAntennas) + " (got " +
                         std::to_string(params.n_t + params.n_r) + "); use qa_design instead");

  const std::uint64_t nf = std::uint64_t{1} << (params.n_t - 1);
  const std::uint64_t ng = std::uint64_t{1} << (params.n_r - 1);

  std::vector<SpinVector> gs;
  gs.reserve(ng);
  for (std::uint64_t gi = 0; gi < ng; ++gi) gs.push_back(spins_from_index(params.n_r, gi));

  double best = -1.0;
  std::uint64_t best_f = 0, best_g = 0;
  for (std::uint64_t fi = 0; fi < nf; ++fi) {
    const SpinVector f = spins_from_index(params.n_t, fi);
    const Eigen::VectorXcd hf = detail::apply_spins(h.entries(), f);
    for (std::uint64_t gi = 0; gi < ng; ++gi) {
      const double v = std::norm(detail::spin_dot<std::complex<double>>(gs[gi], hf));
      if (v > best) {
        best = v;
        best_f = fi;
        best_g = gi;
      }
    }
  }

  DesignResult out;
  out.pair = make_coding_pair(params, h, gs[best_g], spins_from_index(params.n_t, best_f));
  out.iterations_used = 1;
  out.converged_by_tolerance = true;
  return out;
}

DesignResult svd_sign_design(const SystemParams& params, const ChannelMatrix& h,
                             const PowerIterationOptions& opt) {
  params.validate();
  h.check_shape(params);
  auto t = leading_triplet(h, opt);
  // Real parts below the iteration tolerance are unresolved; quantize them as zero.
  auto snap = [&](Eigen::VectorXcd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v[i].real()) <= opt.tol) v[i].real(0.0);
  };
  snap(t.u1);
  snap(t.v1);
  DesignResult out;
  out.pair = make_coding_pair(params, h, sign_real(t.u1), sign_real(t.v1));
  out.iterations_used = 1;
  out.converged_by_tolerance = true;
  out.trace = {out.pair.snr};
  return out;
}

DesignResult rq_design(const SystemParams& params, const ChannelMatrix& h, const IterControl& ctrl,
                       const SpinVector& g0, const std::optional<SpinVector>& f0) {
  params.validate();
  ctrl.validate();
  h.check_shape(params);
  if (g0.size() != params.n_r) throw DimensionError("g0", params.n_r, long(g0.size()));
  const SpinVector f_init = f0 ? *f0 : SpinVector::ones(params.n_t);
  if (f_init.size() != params.n_t) throw DimensionError("f0", params.n_t, long(f_init.size()));

  const Eigen::MatrixXcd& hm = h.entries();
  DesignResult out;
  SpinVector g = g0;
  SpinVector f = f_init;
  double rho_old = evaluate_snr(params, h, g, f);
  double rho_new = rho_old;
  int k = 0;
  for (;;) {
    ++k;
    if (k > 1) rho_old = rho_new;

    const Eigen::VectorXcd a = hm.adjoint() * g.cast<double>().cast<std::complex<double>>();
    if (a.norm() == 0.0) throw DegenerateIterate("rq_design: H^H g vanished", k);
    f = sign_real(rank1_top_eigvec(a));

    const Eigen::VectorXcd b = detail::apply_spins(hm, f);
    if (b.norm() == 0.0) throw DegenerateIterate("rq_design: H f vanished", k);
    g = sign_real(rank1_top_eigvec(b));

    rho_new = evaluate_snr(params, h, g, f);
    out.trace.push_back(rho_new);
    if (relative_change(rho_new, rho_old) < ctrl.rel_tol_delta) {
      out.converged_by_tolerance = true;
      break;
    }
    if (k >= ctrl.max_iters_k) break;
  }
  out.iterations_used = k;
  out.pair = CodingPair{g, f, rho_new};
  return out;
}

DesignResult rqm_design(const SystemParams& params, const ChannelMatrix& h,
                        const IterControl& ctrl, const Eigen::VectorXcd& g0,
                        const std::optional<Eigen::VectorXcd>& f0) {
  params.validate();
  ctrl.validate();
  h.check_shape(params);
  if (g0.size() != params.n_r) throw DimensionError("g0", params.n_r, long(g0.size()));
  if (!(g0.norm() > 0.0)) throw InvalidArgument("rqm_design: initial g has zero norm");

  const Eigen::MatrixXcd& hm = h.entries();
  Eigen::VectorXcd g_r = g0;
  Eigen::VectorXcd f_r;
  if (f0) {
    if (f0->size() != params.n_t) throw DimensionError("f0", params.n_t, long(f0->size()));
    f_r = *f0;
  } else {
    const Eigen::VectorXcd a = hm.adjoint() * g_r;
    if (a.norm() == 0.0) throw DegenerateIterate("rqm_design: H^H g vanished", 0);
    f_r = rank1_top_eigvec(a);
  }

  DesignResult out;
  double rho_old = evaluate_snr_relaxed(params, hm, g_r, f_r);
  double rho_new = rho_old;
  int k = 0;
  for (;;) {
    ++k;
    if (k > 1) rho_old = rho_new;

    // z1(H^H g_r g_r^H H) = H^H g_r / ||H^H g_r||
    const Eigen::VectorXcd a = hm.adjoint() * g_r;
    if (a.norm() == 0.0) throw DegenerateIterate("rqm_design: H^H g vanished", k);
    f_r = rank1_top_eigvec(a);
    const Eigen::VectorXcd b = hm * f_r;
    if (b.norm() == 0.0) throw DegenerateIterate("rqm_design: H f vanished", k);
    g_r = rank1_top_eigvec(b);

    rho_new = evaluate_snr_relaxed(params, hm, g_r, f_r);
    out.trace.push_back(rho_new);
    if (relative_change(rho_new, rho_old) < ctrl.rel_tol_delta) {
      out.converged_by_tolerance = true;
      break;
    }
    if (k >= ctrl.max_iters_k) break;
  }
  out.iterations_used = k;
  out.pair = make_coding_pair(params, h, sign_real(g_r), sign_real(f_r));
  out.relaxed_g = std::move(g_r);
  out.relaxed_f = std::move(f_r);
  return out;
}

}  // namespace onebit
