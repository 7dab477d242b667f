#include "adelic/core/embedding.hpp"

#include "adelic/core/factor.hpp"

namespace adelic {

std::vector<ExtField::Elem> fixed_subspace(const ExtField& dst, unsigned d) {
  const unsigned N = dst.degree();
  const Fq& K = dst.base();
  Matrix<Fq::Elem> A(N, N, 0);
  for (unsigned j = 0; j < N; ++j) {
    ExtField::Elem e = dst.zero();
    e[j] = 1;
    ExtField::Elem img = dst.frob_pow(e, d);
    img = dst.sub(img, e);
    for (unsigned i = 0; i < N; ++i) A(i, j) = img[i];
  }
  return nullspace(K, A);
}

Embedding::Embedding(ExtField src, ExtField dst, ExtField::Elem image_of_gen)
    : src_(std::move(src)), dst_(std::move(dst)), theta_(std::move(image_of_gen)) {
  if (!(src_.base() == dst_.base())) throw FieldMismatch("embedding across different base fields");
  build_matrix();
}

Embedding::Embedding(ExtField src, ExtField dst, std::uint64_t seed) : src_(std::move(src)), dst_(std::move(dst)) {
  if (!(src_.base() == dst_.base())) throw FieldMismatch("embedding across different base fields");
  const unsigned k = src_.degree(), N = dst_.degree();
  if (N % k != 0) throw FieldMismatch("source degree does not divide target degree");
  const Fq& K = src_.base();
  if (src_.same(dst_)) {
    theta_ = dst_.gen();
  } else if (k == 1) {
    theta_ = dst_.from_base(K.neg(src_.modulus()[0]));
  } else {
    auto L = fixed_subspace(dst_, k);
    if (L.size() != k) throw InvariantViolation("subfield dimension mismatch");
    Rng rng(seed);
    for (;;) {
      ExtField::Elem z = dst_.zero();
      for (auto& b : L) z = dst_.add(z, dst_.scale(K.random(rng), b));
      std::vector<ExtField::Elem> pw{dst_.one()};
      for (unsigned i = 1; i <= k; ++i) pw.push_back(dst_.mul(pw.back(), z));
      Matrix<Fq::Elem> A(N, k, 0);
      for (unsigned j = 0; j < k; ++j)
        for (unsigned i = 0; i < N; ++i) A(i, j) = pw[j][i];
      if (mat_rank(K, A) < k) continue;
      auto c = mat_solve(K, A, pw[k]);
      std::vector<Fq::Elem> h(k + 1);
      for (unsigned i = 0; i < k; ++i) h[i] = K.neg((*c)[i]);
      h[k] = 1;
      ExtField S(K, h, "y");
      PolyRing<ExtField> PS(S);
      PolyRing<ExtField>::Elem gs;
      for (auto c0 : src_.modulus()) gs.push_back(S.from_base(c0));
      auto roots = roots_with_multiplicity(PS, gs, seed);
      if (roots.empty()) throw InvariantViolation("no root of the source modulus in the target subfield");
      const auto& rho = roots.front();
      theta_ = dst_.zero();
      for (unsigned i = 0; i < k; ++i) theta_ = dst_.add(theta_, dst_.scale(rho[i], pw[i]));
      break;
    }
  }
  build_matrix();
}

void Embedding::build_matrix() {
  const unsigned k = src_.degree(), N = dst_.degree();
  M_ = Matrix<Fq::Elem>(N, k, 0);
  ExtField::Elem pw = dst_.one();
  for (unsigned j = 0; j < k; ++j) {
    for (unsigned i = 0; i < N; ++i) M_(i, j) = pw[i];
    pw = dst_.mul(pw, theta_);
  }
  // theta must be a root of the source modulus
  ExtField::Elem acc = dst_.zero();
  ExtField::Elem p = dst_.one();
  for (auto c : src_.modulus()) {
    acc = dst_.add(acc, dst_.scale(c, p));
    p = dst_.mul(p, theta_);
  }
  if (!dst_.is_zero(acc)) throw InvariantViolation("embedding image is not a root of the source modulus");
}

ExtField::Elem Embedding::apply(const ExtField::Elem& a) const {
  const Fq& K = dst_.base();
  ExtField::Elem out = dst_.zero();
  for (std::size_t j = 0; j < M_.cols; ++j) {
    if (!a[j]) continue;
    for (std::size_t i = 0; i < M_.rows; ++i) out[i] = K.add(out[i], K.mul(M_(i, j), a[j]));
  }
  return out;
}

std::optional<ExtField::Elem> Embedding::preimage(const ExtField::Elem& b) const {
  auto x = mat_solve(dst_.base(), M_, b);
  if (!x) return std::nullopt;
  return *x;
}

}  // namespace adelic
