#include "normforge/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "normforge/errors.hpp"
#include "normforge/rng.hpp"

namespace normforge {

using linalg::Path;

namespace {

// ---------------------------------------------------------------------------
// Spectral helpers

std::vector<double> as_vector(const Spectrum& s) { return {s.values().begin(), s.values().end()}; }

Spectrum sv(const ComplexMatrix& m, Path p) { return linalg::svd_spectrum(m, p); }

std::vector<double> sv_values(const ComplexMatrix& m, Path p) { return as_vector(sv(m, p)); }

// Values below the rank cutoff of the largest one become exact zeros.
std::vector<double> snapped(const Spectrum& s) {
  std::vector<double> out = as_vector(s);
  const double cut = linalg::kRankCutoff * s.largest();
  for (double& v : out) {
    if (v < cut) v = 0.0;
  }
  return out;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// f applied to a spectrum: the spectrum of f(|M|) for monotone f and the
// eigenvalues of f(|M|) otherwise.
std::vector<double> apply_to(const ScalarFunction& f, const Spectrum& s) {
  std::vector<double> out = snapped(s);
  for (double& v : out) v = f(v);
  return sorted_desc(std::move(out));
}

std::vector<double> map_values(std::vector<double> v, double (*g)(double, double), double e) {
  for (double& x : v) x = g(x, e);
  return v;
}

// Eigenvalues of f(|M|) on the cols x cols space, zero directions included.
std::vector<double> abs_trace_terms(const ScalarFunction& f, const ComplexMatrix& m, Path p) {
  std::vector<double> out = apply_to(f, sv(m, p));
  const auto pad = static_cast<std::size_t>(m.cols()) - out.size();
  out.insert(out.end(), pad, f(0.0));
  return out;
}

const ScalarFunction& fn(const Instance& in) {
  if (!in.function) throw PreconditionError("statement requires a scalar function");
  return *in.function;
}

double exponent(const Instance& in, std::size_t i) {
  if (i >= in.exponents.size()) throw PreconditionError("statement requires more exponents");
  return in.exponents[i];
}

ComplexMatrix f_psd(const ScalarFunction& f, const ComplexMatrix& a, Path p) {
  return linalg::apply_psd_function(a, [&f](double x) { return f(x); }, p);
}

ComplexMatrix f_abs(const ScalarFunction& f, const ComplexMatrix& m, Path p) {
  return f_psd(f, linalg::abs_value(m, p), p);
}

ComplexMatrix mpow(const ComplexMatrix& a, double e, Path p) {
  return linalg::apply_psd_function(a, [e](double x) { return x == 0.0 ? 0.0 : std::pow(x, e); },
                                    p);
}

double pow_value(double x, double e) { return x == 0.0 ? 0.0 : std::pow(x, e); }

// ---------------------------------------------------------------------------
// Block helpers

using Grid = std::vector<std::vector<ComplexMatrix>>;

Grid grid_of(const Instance& in) {
  const auto& part = in.partition;
  Grid g(part.rows.size(), std::vector<ComplexMatrix>(part.cols.size()));
  const bool stored = in.signature == Signature::BlockGeneral ||
                      in.signature == Signature::BlockNormalEntries;
  std::size_t k = 0;
  for (std::size_t i = 0; i < part.rows.size(); ++i) {
    for (std::size_t j = 0; j < part.cols.size(); ++j) {
      g[i][j] = stored ? in.matrices.at(k++) : linalg::extract_block(in.matrices.at(0), part, i, j);
    }
  }
  return g;
}

ComplexMatrix full_of(const Instance& in) {
  if (in.signature == Signature::BlockGeneral || in.signature == Signature::BlockNormalEntries) {
    return linalg::block_compose(grid_of(in));
  }
  return in.matrices.at(0);
}

double entrywise_norm(const ComplexMatrix& a, double p) {
  const double top = a.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) acc += std::pow(std::abs(a(i, j)) / top, p);
  }
  return top * std::pow(acc, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Evaluators

template <bool Normal>
Sides eval_congruence(const Instance& in, Path p) {
  const auto& f = fn(in);
  const Eigen::Index n = in.matrices.at(1).cols();
  ComplexMatrix inner = ComplexMatrix::Zero(n, n);
  ComplexMatrix outer = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i + 1 < in.matrices.size(); i += 2) {
    const auto& a = in.matrices[i];
    const auto& z = in.matrices[i + 1];
    inner += linalg::congruence(z, a);
    outer += linalg::congruence(z, Normal ? f_abs(f, a, p) : f_psd(f, a, p));
  }
  return {apply_to(f, sv(inner, p)), sv_values(outer, p)};
}

Sides eval_horn(const Instance& in, Path p) {
  const Eigen::Index n = in.matrices.at(1).cols();
  ComplexMatrix inner = ComplexMatrix::Zero(n, n);
  ComplexMatrix outer = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i + 1 < in.matrices.size(); i += 2) {
    const auto& a = in.matrices[i];
    const auto& z = in.matrices[i + 1];
    inner += linalg::congruence(z, a);
    outer += linalg::congruence(z, linalg::abs_value(a, p));
  }
  return {snapped(sv(inner, p)), snapped(sv(outer, p))};
}

Sides eval_power_congruence(const Instance& in, Path p) {
  const double e = exponent(in, 0);
  const Eigen::Index n = in.matrices.at(1).cols();
  ComplexMatrix inner = ComplexMatrix::Zero(n, n);
  ComplexMatrix powered = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i + 1 < in.matrices.size(); i += 2) {
    const auto& a = in.matrices[i];
    const auto& z = in.matrices[i + 1];
    inner += linalg::congruence(z, a);
    powered += linalg::congruence(z, mpow(a, e, p));
  }
  return {sv_values(powered, p), map_values(snapped(sv(inner, p)), pow_value, e)};
}

Sides eval_hermitian_parts(const Instance& in, Path p) {
  const auto& f = fn(in);
  const auto& h = in.matrices.at(0);
  const auto& k = in.matrices.at(1);
  const ComplexMatrix z = h + Complex(0.0, 1.0) * k;
  return {apply_to(f, sv(z, p)), sv_values(f_abs(f, h, p) + f_abs(f, k, p), p)};
}

Sides eval_psd_pair(const Instance& in, Path p) {
  const auto& f = fn(in);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  return {apply_to(f, sv(a + b, p)), sv_values(f_psd(f, a, p) + f_psd(f, b, p), p)};
}

Sides eval_normal_pair(const Instance& in, Path p) {
  const auto& f = fn(in);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  return {apply_to(f, sv(a + b, p)), sv_values(f_abs(f, a, p) + f_abs(f, b, p), p)};
}

Sides eval_ando_zhan(const Instance& in, Path p) {
  const double e = exponent(in, 0);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  return {sv_values(mpow(a, e, p) + mpow(b, e, p), p), map_values(snapped(sv(a + b, p)), pow_value, e)};
}

Sides eval_q3_a(const Instance& in, Path p) {
  const double e = exponent(in, 0), q = exponent(in, 1);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  const ComplexMatrix lhs = mpow(a, e + q, p) + mpow(b, e + q, p);
  const ComplexMatrix rhs = (mpow(a, e, p) + mpow(b, e, p)) * (mpow(a, q, p) + mpow(b, q, p));
  return {sv_values(lhs, p), sv_values(rhs, p)};
}

Sides eval_q3_b(const Instance& in, Path p) {
  if (in.exponents.size() < 2 || in.exponents.size() % 2 != 0) {
    throw PreconditionError("statement requires exponent pairs (p_i, q_i)");
  }
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  double sp = 0.0, sq = 0.0;
  ComplexMatrix prod = linalg::identity(a.rows());
  for (std::size_t i = 0; i < in.exponents.size(); i += 2) {
    const double pi = in.exponents[i], qi = in.exponents[i + 1];
    sp += pi;
    sq += qi;
    prod = prod * (mpow(a, pi, p) + mpow(b, qi, p));
  }
  return {sv_values(mpow(a, sp, p) + mpow(b, sq, p), p), sv_values(prod, p)};
}

Sides eval_q3_c(const Instance& in, Path p) {
  const double e = exponent(in, 0), q = exponent(in, 1);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  const ComplexMatrix half = mpow(mpow(a, e, p) + mpow(b, e, p), 0.5, p);
  const ComplexMatrix rhs = half * (mpow(a, q, p) + mpow(b, q, p)) * half;
  return {sv_values(mpow(a, e + q, p) + mpow(b, e + q, p), p), sv_values(rhs, p)};
}

Sides eval_q4(const Instance& in, Path p) {
  const double e = exponent(in, 0), q = exponent(in, 1);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  const ComplexMatrix lhs = mpow(a, e, p) * mpow(b, q, p) + mpow(b, e, p) * mpow(a, q, p);
  return {sv_values(lhs, p), sv_values(mpow(a, e + q, p) + mpow(b, e + q, p), p)};
}

Sides eval_heinz(const Instance& in, Path p) {
  const double e = exponent(in, 0), q = exponent(in, 1);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  const ComplexMatrix lhs = mpow(a, e, p) * mpow(b, q, p) + mpow(a, q, p) * mpow(b, e, p);
  return {sv_values(lhs, p), sv_values(mpow(a, e + q, p) + mpow(b, e + q, p), p)};
}

Sides eval_block_trace(const Instance& in, Path p) {
  const auto& f = fn(in);
  const Grid g = grid_of(in);
  Sides out{abs_trace_terms(f, linalg::block_compose(g), p), {}};
  for (const auto& row : g) {
    for (const auto& blk : row) {
      auto t = abs_trace_terms(f, blk, p);
      out.rhs.insert(out.rhs.end(), t.begin(), t.end());
    }
  }
  return out;
}

Sides eval_block_sum(const Instance& in, Path p) {
  const auto& f = fn(in);
  const Grid g = grid_of(in);
  const Eigen::Index n = g.at(0).at(0).cols();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& row : g) {
    for (const auto& blk : row) sum += f_abs(f, blk, p);
  }
  return {apply_to(f, sv(full_of(in), p)), sv_values(sum, p)};
}

Sides eval_triangular(const Instance& in, Path p) {
  const auto& f = fn(in);
  const auto& a = in.matrices.at(0);
  const auto& nn = in.matrices.at(1);
  const auto& b = in.matrices.at(2);
  const ComplexMatrix zero = ComplexMatrix::Zero(b.rows(), a.cols());
  const ComplexMatrix t = linalg::block_compose({{a, nn}, {zero, b}});
  const ComplexMatrix rhs = f_abs(f, a.adjoint(), p) + f_abs(f, nn, p) + f_abs(f, b, p);
  return {apply_to(f, sv(t, p)), sv_values(rhs, p)};
}

Sides eval_identity_off(const Instance& in, Path p) {
  const auto& f = fn(in);
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  const ComplexMatrix id = linalg::identity(a.rows());
  const ComplexMatrix t = linalg::block_compose({{a, id}, {id, b}});
  const ComplexMatrix rhs = f_abs(f, a.adjoint(), p) + 2.0 * f(1.0) * id + f_abs(f, b, p);
  return {apply_to(f, sv(t, p)), sv_values(rhs, p)};
}

Sides eval_schatten_entrywise(const Instance& in, Path p) {
  const double e = exponent(in, 0);
  const auto& a = in.matrices.at(0);
  const double sch = schatten(sv(a, p), e);
  const double ent = entrywise_norm(a, e);
  if (e <= 2.0) return {{sch}, {ent}};
  return {{ent}, {sch}};
}

Sides eval_lemma_1(const Instance& in, Path p) {
  const auto& x = in.matrices.at(0);
  const auto& y = in.matrices.at(1);
  const auto& c = in.matrices.at(2);
  const auto& d = in.matrices.at(3);
  const ComplexMatrix a = c * x * c.adjoint();
  const ComplexMatrix b = d * y * d.adjoint();
  return {as_vector(Spectrum::direct_sum(sv(a, p), sv(b, p))),
          as_vector(Spectrum::direct_sum(sv(x, p), sv(y, p)))};
}

Sides eval_lemma_2(const Instance& in, Path p) {
  const auto& a = in.matrices.at(0);
  const auto& b = in.matrices.at(1);
  return {as_vector(Spectrum::direct_sum(sv(a, p), sv(b, p))), sv_values(a + b, p)};
}

Sides eval_lemma_3(const Instance& in, Path p) {
  const auto& m = in.matrices.at(0);
  std::vector<double> pinched;
  for (std::size_t i = 0; i < in.partition.rows.size(); ++i) {
    auto v = sv_values(linalg::extract_block(m, in.partition, i, i), p);
    pinched.insert(pinched.end(), v.begin(), v.end());
  }
  return {sorted_desc(std::move(pinched)), sv_values(m, p)};
}

// ---------------------------------------------------------------------------
// Registry

constexpr SamplingRule rule(Signature s, FunctionGate g = FunctionGate::None,
                            ExponentRule e = ExponentRule::None, Source src = Source::Random,
                            std::size_t grid = 0) {
  return SamplingRule{s, g, e, src, grid};
}

using S = Signature;
using G = FunctionGate;
using E = ExponentRule;

std::vector<Statement> build_registry() {
  return {
      {"eq_1", Status::Proven, Mode::Trace, rule(S::PsdCongruence, G::Concave),
       "A psd; Z expansive; f >= 0 concave", "Tr f(Z*AZ) <= Tr Z*f(A)Z",
       &eval_congruence<false>},
      {"eq_2", Status::Conjecture, Mode::Trace, rule(S::NormalCongruence, G::Concave),
       "A normal; Z expansive; f >= 0 concave", "Tr f(|Z*AZ|) <= Tr Z*f(|A|)Z",
       &eval_congruence<true>},
      {"thm_1_1a", Status::Proven, Mode::AllNorms, rule(S::PsdCongruence, G::Concave),
       "A psd; Z expansive; f >= 0 concave", "||f(Z*AZ)|| <= ||Z*f(A)Z||",
       &eval_congruence<false>},
      {"thm_1_1b", Status::Proven, Mode::AllNorms, rule(S::PsdPair, G::Concave),
       "A, B psd; f >= 0 concave", "||f(A+B)|| <= ||f(A)+f(B)||", &eval_psd_pair},
      {"thm_1_1", Status::Proven, Mode::AllNorms, rule(S::PsdCongruenceSum, G::Concave),
       "A_i psd; Z_i expansive; f >= 0 concave",
       "||f(sum Z_i*A_iZ_i)|| <= ||sum Z_i*f(A_i)Z_i||", &eval_congruence<false>},
      {"cor_1_2", Status::Proven, Mode::OpNorm, rule(S::NormalCongruenceSum, G::Concave),
       "A_i normal; Z_i expansive; f >= 0 concave",
       "||f(|sum Z_i*A_iZ_i|)||_inf <= ||sum Z_i*f(|A_i|)Z_i||_inf", &eval_congruence<true>},
      {"conj_1", Status::Conjecture, Mode::AllNorms, rule(S::NormalCongruenceSum, G::Concave),
       "A_i normal; Z_i expansive; f >= 0 concave",
       "||f(|sum Z_i*A_iZ_i|)|| <= ||sum Z_i*f(|A_i|)Z_i||", &eval_congruence<true>},
      {"cor_1_3", Status::Proven, Mode::OpNorm, rule(S::HermitianParts, G::Concave),
       "H, K Hermitian; f >= 0 concave", "||f(|H+iK|)||_inf <= ||f(|H|)+f(|K|)||_inf",
       &eval_hermitian_parts},
      {"cor_1_4", Status::Proven, Mode::AllNorms,
       rule(S::NormalCongruenceSum, G::ConcaveEConvex),
       "A_i normal; Z_i expansive; f >= 0 concave, e-convex",
       "||f(|sum Z_i*A_iZ_i|)|| <= ||sum Z_i*f(|A_i|)Z_i||", &eval_congruence<true>},
      {"cor_1_5", Status::Proven, Mode::AllNorms, rule(S::NormalPair, G::ConcaveEConvex),
       "A, B normal; f >= 0 concave, e-convex", "||f(|A+B|)|| <= ||f(|A|)+f(|B|)||",
       &eval_normal_pair},
      {"cor_1_6", Status::Proven, Mode::AllNorms, rule(S::NormalPair, G::PowerUpToOne),
       "A, B normal; 0 < p <= 1", "|| |A+B|^p || <= || |A|^p+|B|^p ||", &eval_normal_pair},
      {"horn_step", Status::Proven, Mode::WeakLog, rule(S::NormalCongruenceSum),
       "A_i normal; Z_i expansive", "|sum Z_i*A_iZ_i| <_wlog sum Z_i*|A_i|Z_i", &eval_horn},
      {"cor_1_7", Status::Proven, Mode::AllNorms,
       rule(S::PsdCongruenceSum, G::None, E::AtLeastOne), "A_i psd; Z_i expansive; p >= 1",
       "||sum Z_i*A_i^pZ_i|| <= ||(sum Z_i*A_iZ_i)^p||", &eval_power_congruence},
      {"ando_zhan", Status::Proven, Mode::AllNorms,
       rule(S::PsdPairExponents, G::None, E::AtLeastOne), "A, B psd; p >= 1",
       "||A^p+B^p|| <= ||(A+B)^p||", &eval_ando_zhan},
      {"q3_a", Status::Question, Mode::AllNorms, rule(S::PsdPairExponents, G::None, E::Pair),
       "A, B psd; p, q > 0", "||A^(p+q)+B^(p+q)|| <= ||(A^p+B^p)(A^q+B^q)||", &eval_q3_a},
      {"q3_b", Status::Question, Mode::AllNorms,
       rule(S::PsdPairExponents, G::None, E::FactorPairs), "A, B psd; p_i, q_i > 0",
       "||A^(sum p_i)+B^(sum q_i)|| <= ||prod_i (A^p_i+B^q_i)||", &eval_q3_b},
      {"q3_c", Status::Question, Mode::AllNorms, rule(S::PsdPairExponents, G::None, E::Pair),
       "A, B psd; p, q > 0",
       "||A^(p+q)+B^(p+q)|| <= ||(A^p+B^p)^(1/2)(A^q+B^q)(A^p+B^p)^(1/2)||", &eval_q3_c},
      {"q4", Status::Question, Mode::AllNorms, rule(S::PsdPairExponents, G::None, E::Pair),
       "A, B psd; p, q > 0", "||A^pB^q+B^pA^q|| <= ||A^(p+q)+B^(p+q)||", &eval_q4},
      {"heinz", Status::Proven, Mode::AllNorms, rule(S::PsdPairExponents, G::None, E::Pair),
       "A, B psd; p, q > 0", "||A^pB^q+A^qB^p|| <= ||A^(p+q)+B^(p+q)||", &eval_heinz},
      {"eq_3", Status::Proven, Mode::Trace, rule(S::BlockGeneral, G::Concave),
       "M = [M_ij] any blocks; f >= 0 concave", "Tr f(|M|) <= sum_ij Tr f(|M_ij|)",
       &eval_block_trace},
      {"thm_2_1", Status::Proven, Mode::AllNorms, rule(S::BlockNormalEntries, G::ConcaveEConvex),
       "M = [A_ij], A_ij normal, equal size; f >= 0 concave, e-convex",
       "||f(|M|)|| <= ||sum_ij f(|A_ij|)||", &eval_block_sum},
      {"cor_2_2", Status::Proven, Mode::OpNorm, rule(S::BlockNormalEntries, G::Concave),
       "M = [A_ij], A_ij normal, equal size; f >= 0 concave",
       "||f(|M|)||_inf <= ||sum_ij f(|A_ij|)||_inf", &eval_block_sum},
      {"conj_2", Status::Conjecture, Mode::AllNorms, rule(S::BlockNormalEntries, G::Concave),
       "M = [A_ij], A_ij normal, equal size; f >= 0 concave",
       "||f(|M|)|| <= ||sum_ij f(|A_ij|)||", &eval_block_sum},
      {"cor_2_3", Status::Proven, Mode::AllNorms, rule(S::TriangularNormal, G::ConcaveEConvex),
       "A, B any; N normal; f >= 0 concave, e-convex",
       "||f(|[[A,N],[0,B]]|)|| <= ||f(|A*|)+f(|N|)+f(|B|)||", &eval_triangular},
      {"cor_2_4", Status::Proven, Mode::AllNorms,
       rule(S::IdentityOffDiagonal, G::ConcaveEConvex), "A, B any; f >= 0 concave, e-convex",
       "||f(|[[A,I],[I,B]]|)|| <= ||f(|A*|)+2f(1)I+f(|B|)||", &eval_identity_off},
      {"thm_2_5", Status::Proven, Mode::AllNorms, rule(S::BlockHermitian, G::ConcaveEConvex),
       "M Hermitian, equal square blocks; f >= 0 concave, e-convex",
       "||f(|M|)|| <= ||sum_ij f(|M_ij|)||", &eval_block_sum},
      {"cor_2_6", Status::Proven, Mode::AllNorms,
       rule(S::BlockHermitian, G::PowerUpToOne, E::None, Source::Random, 2),
       "M Hermitian, 2 x 2 equal blocks; 0 < p <= 1", "|| |M|^p || <= ||sum_ij |M_ij|^p||",
       &eval_block_sum},
      {"conj_3", Status::Conjecture, Mode::AllNorms, rule(S::BlockHermitian, G::Concave),
       "M Hermitian, equal square blocks; f >= 0 concave", "||f(|M|)|| <= ||sum_ij f(|M_ij|)||",
       &eval_block_sum},
      {"conj_4", Status::Conjecture, Mode::AllNorms, rule(S::BlockNormalFull, G::Concave),
       "M normal, equal square blocks; f >= 0 concave", "||f(|M|)|| <= ||sum_ij f(|M_ij|)||",
       &eval_block_sum},
      {"thm_2_7", Status::Proven, Mode::Trace, rule(S::BlockGeneral, G::SqrtConcave),
       "M = [M_ij] any blocks; f(sqrt t) concave; f(0) >= 0",
       "Tr f(|M|) <= sum_ij Tr f(|M_ij|)", &eval_block_trace},
      {"schatten_entrywise", Status::Proven, Mode::Scalar,
       rule(S::EntrywiseSchatten, G::None, E::SchattenIndex), "A any; 1 <= p",
       "||A||_p <= (sum |a_ij|^p)^(1/p) for p <= 2, reversed for p >= 2",
       &eval_schatten_entrywise},
      {"lemma_1", Status::Proven, Mode::AllNorms, rule(S::ShrunkPsdPairs),
       "X, Y psd; C, D contractions", "CXC* (+) DYD* <_w X (+) Y", &eval_lemma_1},
      {"lemma_2", Status::Proven, Mode::AllNorms, rule(S::PsdPair), "A, B psd",
       "A (+) B <_w (A+B) (+) 0", &eval_lemma_2},
      {"lemma_3", Status::Proven, Mode::Majorization, rule(S::PsdBlock),
       "M psd, square diagonal blocks", "diag(M_11, ..., M_kk) < M", &eval_lemma_3},
      {"ex_2_8", Status::CounterexampleDemo, Mode::OpNorm,
       rule(S::BlockHermitian, G::FixedSquare, E::None, Source::BlockPowerFixture, 2),
       "M Hermitian, 2 x 2 blocks; f(t) = t^2",
       "|| |M|^2 ||_inf <= ||sum_ij |M_ij|^2||_inf (fails)", &eval_block_sum},
  };
}

// ---------------------------------------------------------------------------
// Validation

std::vector<MatrixTag> expected_classes(Signature sig, std::size_t count) {
  using T = MatrixTag;
  switch (sig) {
    case S::PsdCongruence: return {T::PositiveSemidefinite, T::Expansive};
    case S::NormalCongruence: return {T::Normal, T::Expansive};
    case S::PsdPair:
    case S::PsdPairExponents: return {T::PositiveSemidefinite, T::PositiveSemidefinite};
    case S::PsdCongruenceSum:
    case S::NormalCongruenceSum: {
      if (count == 0 || count % 2 != 0) return {};
      std::vector<T> out;
      for (std::size_t i = 0; i < count; i += 2) {
        out.push_back(sig == S::PsdCongruenceSum ? T::PositiveSemidefinite : T::Normal);
        out.push_back(T::Expansive);
      }
      return out;
    }
    case S::HermitianParts: return {T::Hermitian, T::Hermitian};
    case S::NormalPair: return {T::Normal, T::Normal};
    case S::BlockGeneral: return std::vector<T>(count, T::General);
    case S::BlockNormalEntries: return std::vector<T>(count, T::Normal);
    case S::BlockHermitian: return {T::Hermitian};
    case S::BlockNormalFull: return {T::Normal};
    case S::TriangularNormal: return {T::General, T::Normal, T::General};
    case S::IdentityOffDiagonal: return {T::General, T::General};
    case S::EntrywiseSchatten: return {T::General};
    case S::ShrunkPsdPairs:
      return {T::PositiveSemidefinite, T::PositiveSemidefinite, T::Contraction, T::Contraction};
    case S::PsdBlock: return {T::PositiveSemidefinite};
  }
  return {};
}

[[noreturn]] void fail(const Statement& st, const std::string& what) {
  throw PreconditionError(std::string(st.id) + ": " + what);
}

void require_square(const Statement& st, const ComplexMatrix& m, Eigen::Index n,
                    const char* what) {
  if (m.rows() != n || m.cols() != n) fail(st, std::string(what) + " must be square of the common size");
}

bool equal_square_partition(const BlockPartition& p) {
  if (p.rows.empty() || p.rows != p.cols) return false;
  return std::all_of(p.rows.begin(), p.rows.end(), [&](auto r) { return r == p.rows[0] && r > 0; });
}

void validate_shapes(const Statement& st, const Instance& in) {
  const auto& ms = in.matrices;
  const auto& part = in.partition;
  switch (in.signature) {
    case S::PsdCongruence:
    case S::NormalCongruence:
    case S::PsdCongruenceSum:
    case S::NormalCongruenceSum: {
      const Eigen::Index n = ms[1].cols();
      for (std::size_t i = 0; i < ms.size(); i += 2) {
        require_square(st, ms[i], ms[i + 1].rows(), "A_i");
        if (ms[i + 1].rows() < ms[i + 1].cols()) fail(st, "Z_i must have rows >= cols");
        if (ms[i + 1].cols() != n) fail(st, "all Z_i must share a column count");
      }
      break;
    }
    case S::PsdPair:
    case S::PsdPairExponents:
    case S::HermitianParts:
    case S::NormalPair:
    case S::IdentityOffDiagonal:
      require_square(st, ms[0], ms[0].rows(), "A");
      require_square(st, ms[1], ms[0].rows(), "B");
      break;
    case S::TriangularNormal:
      require_square(st, ms[0], ms[0].rows(), "A");
      require_square(st, ms[1], ms[0].rows(), "N");
      require_square(st, ms[2], ms[0].rows(), "B");
      break;
    case S::ShrunkPsdPairs:
      for (const auto& m : ms) require_square(st, m, ms[0].rows(), "X, Y, C, D");
      break;
    case S::EntrywiseSchatten:
      break;
    case S::BlockGeneral: {
      if (part.rows.empty() || part.cols.empty()) fail(st, "empty block partition");
      std::size_t k = 0;
      for (auto r : part.rows) {
        for (auto c : part.cols) {
          if (ms[k].rows() != r || ms[k].cols() != c) fail(st, "block shape disagrees with partition");
          ++k;
        }
      }
      break;
    }
    case S::BlockNormalEntries:
      if (!equal_square_partition(part)) fail(st, "blocks must be square and of equal size");
      for (const auto& m : ms) require_square(st, m, part.rows[0], "A_ij");
      break;
    case S::BlockHermitian:
    case S::BlockNormalFull:
      if (!equal_square_partition(part)) fail(st, "blocks must be square and of equal size");
      require_square(st, ms[0], part.total_rows(), "M");
      break;
    case S::PsdBlock:
      if (part.rows.empty() || part.rows != part.cols) fail(st, "diagonal blocks must be square");
      require_square(st, ms[0], part.total_rows(), "M");
      break;
  }
  if (st.rule.grid != 0 &&
      (part.rows.size() != st.rule.grid || part.cols.size() != st.rule.grid)) {
    fail(st, "partition must be " + std::to_string(st.rule.grid) + " x " +
                 std::to_string(st.rule.grid));
  }
}

void validate_exponents(const Statement& st, const Instance& in) {
  const auto& e = in.exponents;
  const auto finite = std::all_of(e.begin(), e.end(), [](double x) { return std::isfinite(x); });
  if (!finite) fail(st, "exponents must be finite");
  switch (st.rule.exponents) {
    case E::None:
      if (!e.empty()) fail(st, "statement takes no exponents");
      break;
    case E::AtLeastOne:
      if (e.size() != 1 || e[0] < 1.0) fail(st, "requires one exponent p >= 1");
      break;
    case E::Pair:
      if (e.size() != 2 || e[0] <= 0.0 || e[1] <= 0.0) fail(st, "requires exponents p, q > 0");
      break;
    case E::FactorPairs:
      if (e.size() < 2 || e.size() % 2 != 0) fail(st, "requires exponent pairs (p_i, q_i)");
      for (double x : e) {
        if (x <= 0.0) fail(st, "exponents must be positive");
      }
      break;
    case E::SchattenIndex:
      if (e.size() != 1 || e[0] < 1.0) fail(st, "requires one Schatten index p >= 1");
      break;
  }
}

Sides normalized(Sides s) {
  double top = 0.0;
  for (double v : s.lhs) top = std::max(top, std::abs(v));
  for (double v : s.rhs) top = std::max(top, std::abs(v));
  if (top > 0.0 && std::isfinite(top)) {
    for (double& v : s.lhs) v /= top;
    for (double& v : s.rhs) v /= top;
  }
  return s;
}

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double first(const std::vector<double>& v) { return v.empty() ? 0.0 : v.front(); }

CheckResult check_in_mode(Mode mode, std::string_view id, const Instance& inst,
                          const CheckOptions& opts) {
  const Statement& st = catalog::find(id);
  if (st.mode != mode) {
    throw PreconditionError(std::string(id) + " is a " + std::string(to_string(st.mode)) +
                            " statement, not " + std::string(to_string(mode)));
  }
  return catalog::check(st, inst, opts);
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Proven: return "proven";
    case Status::Conjecture: return "conjecture";
    case Status::Question: return "question";
    case Status::CounterexampleDemo: return "counterexample_demo";
  }
  return "proven";
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::AllNorms: return "all_norms";
    case Mode::OpNorm: return "op_norm";
    case Mode::Trace: return "trace";
    case Mode::WeakLog: return "weak_log";
    case Mode::Majorization: return "majorization";
    case Mode::Scalar: return "scalar";
  }
  return "all_norms";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "holds";
}

Status parse_status(std::string_view name) {
  for (auto s : {Status::Proven, Status::Conjecture, Status::Question, Status::CounterexampleDemo}) {
    if (to_string(s) == name) return s;
  }
  throw LookupError("unknown status '" + std::string(name) + "'");
}

Mode parse_mode(std::string_view name) {
  for (auto m : {Mode::AllNorms, Mode::OpNorm, Mode::Trace, Mode::WeakLog, Mode::Majorization,
                 Mode::Scalar}) {
    if (to_string(m) == name) return m;
  }
  throw LookupError("unknown mode '" + std::string(name) + "'");
}

Verdict parse_verdict(std::string_view name) {
  for (auto v : {Verdict::Holds, Verdict::Violated, Verdict::Inconclusive}) {
    if (to_string(v) == name) return v;
  }
  throw LookupError("unknown verdict '" + std::string(name) + "'");
}

namespace catalog {

const std::vector<Statement>& registry() {
  static const std::vector<Statement> r = build_registry();
  return r;
}

const Statement& find(std::string_view id) {
  for (const auto& st : registry()) {
    if (st.id == id) return st;
  }
  throw LookupError("unknown statement '" + std::string(id) + "'");
}

Instance sample_instance(std::string_view id, Eigen::Index dim, std::uint64_t seed,
                         std::uint64_t trial, const std::vector<ScalarFunction>& pool) {
  const Statement& st = find(id);
  Instance inst = sample_with_rule(st.rule, dim, derive_key(seed, hash_name(id), trial), pool);
  inst.statement = std::string(id);
  inst.seed = seed;
  inst.trial = trial;
  return inst;
}

void validate(const Statement& st, const Instance& inst, double class_tolerance) {
  if (inst.signature != st.rule.signature) {
    fail(st, "instance signature " + std::string(to_string(inst.signature)) + " does not match " +
                 std::string(to_string(st.rule.signature)));
  }
  std::size_t count = inst.matrices.size();
  if (inst.signature == S::BlockGeneral || inst.signature == S::BlockNormalEntries) {
    const std::size_t want = inst.partition.rows.size() * inst.partition.cols.size();
    if (count != want) fail(st, "expected one matrix per block");
  }
  const auto classes = expected_classes(inst.signature, count);
  if (classes.empty() || classes.size() != count) fail(st, "wrong number of matrices");
  for (std::size_t i = 0; i < count; ++i) {
    if (!linalg::is_finite(inst.matrices[i])) fail(st, "matrix " + std::to_string(i) + " is not finite");
  }
  validate_shapes(st, inst);
  for (std::size_t i = 0; i < count; ++i) {
    if (!linalg::classify(inst.matrices[i], MatrixClass{classes[i], class_tolerance})) {
      fail(st, "matrix " + std::to_string(i) + " is not " + std::string(to_string(classes[i])));
    }
  }
  if (st.rule.gate == G::None) {
    if (inst.function) fail(st, "statement takes no scalar function");
  } else {
    if (!inst.function) fail(st, "statement requires a scalar function");
    if (!gate_accepts(st.rule.gate, *inst.function)) {
      fail(st, "function " + inst.function->id() + " fails gate " +
                   std::string(to_string(st.rule.gate)));
    }
  }
  validate_exponents(st, inst);
}

double margin(Mode mode, const Sides& sides) {
  switch (mode) {
    case Mode::AllNorms:
      return violation_margin(Spectrum(sides.lhs), Spectrum(sides.rhs));
    case Mode::WeakLog:
      return log_violation_margin(Spectrum(sides.lhs), Spectrum(sides.rhs));
    case Mode::Majorization: {
      const double r = total(sides.rhs);
      const double trace_gap = std::abs(total(sides.lhs) - r) / (1.0 + std::abs(r));
      return std::max(violation_margin(Spectrum(sides.lhs), Spectrum(sides.rhs)), trace_gap);
    }
    case Mode::OpNorm:
    case Mode::Scalar: {
      const double r = first(sides.rhs);
      return (first(sides.lhs) - r) / (1.0 + std::abs(r));
    }
    case Mode::Trace: {
      const double r = total(sides.rhs);
      return (total(sides.lhs) - r) / (1.0 + std::abs(r));
    }
  }
  return 0.0;
}

bool holds(Mode mode, const Sides& sides, const TolerancePolicy& tol) {
  switch (mode) {
    case Mode::AllNorms:
      return weak_majorize(Spectrum(sides.lhs), Spectrum(sides.rhs), tol);
    case Mode::WeakLog:
      return weak_log_majorize(Spectrum(sides.lhs), Spectrum(sides.rhs), tol);
    case Mode::Majorization:
      return majorize(Spectrum(sides.lhs), Spectrum(sides.rhs), tol);
    case Mode::OpNorm:
    case Mode::Scalar:
      return tol.holds(first(sides.lhs), first(sides.rhs));
    case Mode::Trace:
      return tol.holds(total(sides.lhs), total(sides.rhs));
  }
  return false;
}

double objective(const Statement& st, const Instance& inst) {
  return margin(st.mode, st.evaluate(inst, Path::Primary));
}

CheckResult check(const Statement& st, const Instance& inst, const CheckOptions& opts) {
  validate(st, inst, opts.class_tolerance);
  Sides primary = st.evaluate(inst, Path::Primary);

  CheckResult r;
  r.statement = std::string(st.id);
  r.mode = st.mode;
  r.margin = margin(st.mode, primary);
  r.instance = inst;
  if (r.instance.statement.empty()) r.instance.statement = r.statement;

  if (holds(st.mode, primary, opts.tol)) {
    r.verdict = Verdict::Holds;
  } else {
    const Sides alt = st.evaluate(inst, Path::Alternate);
    r.recheck_margin = margin(st.mode, normalized(alt));
    if (r.margin > opts.threshold) {
      r.verdict = *r.recheck_margin > opts.threshold ? Verdict::Violated : Verdict::Inconclusive;
    } else {
      r.verdict = holds(st.mode, alt, opts.tol) ? Verdict::Holds : Verdict::Inconclusive;
    }
  }
  r.lhs = std::move(primary.lhs);
  r.rhs = std::move(primary.rhs);
  return r;
}

CheckResult check(std::string_view id, const Instance& inst, const CheckOptions& opts) {
  return check(find(id), inst, opts);
}

CheckResult check_all_norms(std::string_view id, const Instance& inst, const CheckOptions& opts) {
  return check_in_mode(Mode::AllNorms, id, inst, opts);
}

CheckResult check_op_norm(std::string_view id, const Instance& inst, const CheckOptions& opts) {
  return check_in_mode(Mode::OpNorm, id, inst, opts);
}

CheckResult check_trace(std::string_view id, const Instance& inst, const CheckOptions& opts) {
  return check_in_mode(Mode::Trace, id, inst, opts);
}

CheckResult check_wlog(std::string_view id, const Instance& inst, const CheckOptions& opts) {
  return check_in_mode(Mode::WeakLog, id, inst, opts);
}

CheckResult check_structural(std::string_view id, const Instance& inst,
                             const CheckOptions& opts) {
  if (id != "lemma_1" && id != "lemma_2" && id != "lemma_3") {
    throw PreconditionError(std::string(id) + " is not a structural lemma");
  }
  return check(find(id), inst, opts);
}

CheckResult demo_block_power_counterexample(const CheckOptions& opts) {
  return check("ex_2_8", sample_instance("ex_2_8", 2, 0, 0), opts);
}

DilationCheck check_dilation_identity(const ComplexMatrix& m, double rel_tol) {
  DilationCheck out;
  out.dilation = linalg::svd_spectrum(linalg::hermitian_dilation(m));
  const Spectrum s = linalg::svd_spectrum(m);
  out.duplicated = Spectrum::direct_sum(s, s);
  const std::size_t n = std::max(out.dilation.size(), out.duplicated.size());
  for (std::size_t k = 0; k < n; ++k) {
    out.max_error = std::max(out.max_error, std::abs(out.dilation[k] - out.duplicated[k]));
  }
  out.holds = out.max_error <= rel_tol * (1.0 + s.largest());
  return out;
}

}  // namespace catalog
}  // namespace normforge
