#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "adelic/core/poly.hpp"

namespace adelic {

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill) : rows(r), cols(c), a(r * c, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool square() const { return rows == cols; }
};

template <RingContext R>
Matrix<typename R::Elem> mat_zero(const R& r, std::size_t rows, std::size_t cols) {
  return Matrix<typename R::Elem>(rows, cols, r.zero());
}

template <RingContext R>
Matrix<typename R::Elem> mat_identity(const R& r, std::size_t n) {
  auto m = mat_zero(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = r.one();
  return m;
}

template <RingContext R>
Matrix<typename R::Elem> mat_mul(const R& r, const Matrix<typename R::Elem>& A, const Matrix<typename R::Elem>& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: dimension mismatch");
  auto C = mat_zero(r, A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      const auto& x = A(i, k);
      if (r.is_zero(x)) continue;
      for (std::size_t j = 0; j < B.cols; ++j) C(i, j) = r.add(C(i, j), r.mul(x, B(k, j)));
    }
  return C;
}

template <RingContext R>
Matrix<typename R::Elem> mat_add(const R& r, const Matrix<typename R::Elem>& A, const Matrix<typename R::Elem>& B) {
  auto C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = r.add(A.a[i], B.a[i]);
  return C;
}

template <RingContext R>
Matrix<typename R::Elem> mat_sub(const R& r, const Matrix<typename R::Elem>& A, const Matrix<typename R::Elem>& B) {
  auto C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = r.sub(A.a[i], B.a[i]);
  return C;
}

template <RingContext R>
Matrix<typename R::Elem> mat_scale(const R& r, const typename R::Elem& c, const Matrix<typename R::Elem>& A) {
  auto C = A;
  for (auto& x : C.a) x = r.mul(c, x);
  return C;
}

template <RingContext R>
std::vector<typename R::Elem> mat_vec(const R& r, const Matrix<typename R::Elem>& A, const std::vector<typename R::Elem>& v) {
  std::vector<typename R::Elem> out(A.rows, r.zero());
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) out[i] = r.add(out[i], r.mul(A(i, j), v[j]));
  return out;
}

template <RingContext R>
bool mat_equal(const R& r, const Matrix<typename R::Elem>& A, const Matrix<typename R::Elem>& B) {
  if (A.rows != B.rows || A.cols != B.cols) return false;
  for (std::size_t i = 0; i < A.a.size(); ++i)
    if (!r.equal(A.a[i], B.a[i])) return false;
  return true;
}

template <RingContext R>
bool mat_is_zero(const R& r, const Matrix<typename R::Elem>& A) {
  for (const auto& x : A.a)
    if (!r.is_zero(x)) return false;
  return true;
}

template <RingContext R>
typename R::Elem mat_trace(const R& r, const Matrix<typename R::Elem>& A) {
  auto t = r.zero();
  for (std::size_t i = 0; i < A.rows; ++i) t = r.add(t, A(i, i));
  return t;
}

template <RingContext R>
Matrix<typename R::Elem> mat_map(const R&, const Matrix<typename R::Elem>& A, auto&& f) {
  Matrix<typename R::Elem> C = A;
  for (auto& x : C.a) x = f(x);
  return C;
}

// Division-free characteristic polynomial det(X Id - M) (Berkowitz), low to high, monic.
template <RingContext R>
typename PolyRing<R>::Elem charpoly_mat(const R& r, const Matrix<typename R::Elem>& M) {
  using E = typename R::Elem;
  if (!M.square()) throw std::invalid_argument("charpoly_mat: matrix not square");
  const std::size_t n = M.rows;
  if (n == 0) return {r.one()};
  std::vector<E> vect{r.one(), r.neg(M(0, 0))};
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<E> t(k + 2, r.zero());
    t[0] = r.one();
    t[1] = r.neg(M(k, k));
    std::vector<E> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = M(i, k);
    for (std::size_t s = 0; s < k; ++s) {
      E dot = r.zero();
      for (std::size_t j = 0; j < k; ++j) dot = r.add(dot, r.mul(M(k, j), v[j]));
      t[s + 2] = r.neg(dot);
      if (s + 1 < k) {
        std::vector<E> w(k, r.zero());
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) w[i] = r.add(w[i], r.mul(M(i, j), v[j]));
        v = std::move(w);
      }
    }
    std::vector<E> nv(k + 2, r.zero());
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j) nv[i] = r.add(nv[i], r.mul(t[i - j], vect[j]));
    vect = std::move(nv);
  }
  std::vector<E> out(vect.rbegin(), vect.rend());
  return out;
}

template <RingContext R>
typename R::Elem mat_det(const R& r, const Matrix<typename R::Elem>& M) {
  auto cp = charpoly_mat(r, M);
  auto c0 = cp.empty() ? r.zero() : cp[0];
  return M.rows % 2 ? r.neg(c0) : c0;
}

// f(M) by Horner.
template <RingContext R>
Matrix<typename R::Elem> poly_eval_mat(const R& r, const std::vector<typename R::Elem>& f, const Matrix<typename R::Elem>& M) {
  auto acc = mat_zero(r, M.rows, M.cols);
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = mat_mul(r, acc, M);
    for (std::size_t d = 0; d < M.rows; ++d) acc(d, d) = r.add(acc(d, d), f[i]);
  }
  return acc;
}

// Inverse by Gauss-Jordan choosing unit pivots; valid over fields and local rings.
template <RingContext R>
std::optional<Matrix<typename R::Elem>> mat_inverse(const R& r, Matrix<typename R::Elem> A) {
  const std::size_t n = A.rows;
  auto I = mat_identity(r, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (r.is_unit(A(i, c))) {
        piv = i;
        break;
      }
    if (piv == n) return std::nullopt;
    if (piv != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(A(piv, j), A(c, j));
        std::swap(I(piv, j), I(c, j));
      }
    auto inv = r.inv(A(c, c));
    for (std::size_t j = 0; j < n; ++j) {
      A(c, j) = r.mul(inv, A(c, j));
      I(c, j) = r.mul(inv, I(c, j));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || r.is_zero(A(i, c))) continue;
      auto f = A(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        A(i, j) = r.sub(A(i, j), r.mul(f, A(c, j)));
        I(i, j) = r.sub(I(i, j), r.mul(f, I(c, j)));
      }
    }
  }
  return I;
}

// Reduced row echelon form in place over a field; returns pivot columns.
template <FieldContext F>
std::vector<std::size_t> rref(const F& f, Matrix<typename F::Elem>& A) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < A.cols && row < A.rows; ++c) {
    std::size_t piv = A.rows;
    for (std::size_t i = row; i < A.rows; ++i)
      if (!f.is_zero(A(i, c))) {
        piv = i;
        break;
      }
    if (piv == A.rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < A.cols; ++j) std::swap(A(piv, j), A(row, j));
    auto inv = f.inv(A(row, c));
    for (std::size_t j = c; j < A.cols; ++j) A(row, j) = f.mul(inv, A(row, j));
    for (std::size_t i = 0; i < A.rows; ++i) {
      if (i == row || f.is_zero(A(i, c))) continue;
      auto m = A(i, c);
      for (std::size_t j = c; j < A.cols; ++j) A(i, j) = f.sub(A(i, j), f.mul(m, A(row, j)));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <FieldContext F>
std::size_t mat_rank(const F& f, Matrix<typename F::Elem> A) {
  return rref(f, A).size();
}

// Basis of {v : A v = 0}.
template <FieldContext F>
std::vector<std::vector<typename F::Elem>> nullspace(const F& f, Matrix<typename F::Elem> A) {
  auto piv = rref(f, A);
  std::vector<bool> is_piv(A.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<typename F::Elem>> out;
  for (std::size_t free = 0; free < A.cols; ++free) {
    if (is_piv[free]) continue;
    std::vector<typename F::Elem> v(A.cols, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(A(r, free));
    out.push_back(std::move(v));
  }
  return out;
}

// Some solution of A x = b, if any.
template <FieldContext F>
std::optional<std::vector<typename F::Elem>> mat_solve(const F& f, const Matrix<typename F::Elem>& A, const std::vector<typename F::Elem>& b) {
  Matrix<typename F::Elem> aug(A.rows, A.cols + 1, f.zero());
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
    aug(i, A.cols) = b[i];
  }
  auto piv = rref(f, aug);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  std::vector<typename F::Elem> x(A.cols, f.zero());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, A.cols);
  return x;
}

}  // namespace adelic
