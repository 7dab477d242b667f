#pragma once

#include <concepts>
#include <cstdint>
#include <string>

#include "adelic/core/types.hpp"

namespace adelic {

// Ring context objects carry the operations; elements are plain values.
template <class R>
concept RingContext = requires(const R& r, const typename R::Elem& a, const typename R::Elem& b, std::int64_t n) {
  { r.zero() } -> std::convertible_to<typename R::Elem>;
  { r.one() } -> std::convertible_to<typename R::Elem>;
  { r.add(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.sub(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.neg(a) } -> std::convertible_to<typename R::Elem>;
  { r.mul(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.equal(a, b) } -> std::convertible_to<bool>;
  { r.from_int(n) } -> std::convertible_to<typename R::Elem>;
  { r.to_string(a) } -> std::convertible_to<std::string>;
};

template <class R>
concept FieldContext = RingContext<R> && requires(const R& r, const typename R::Elem& a) {
  { r.inv(a) } -> std::convertible_to<typename R::Elem>;
};

template <class F>
concept FiniteFieldContext = FieldContext<F> && requires(const F& f, const typename F::Elem& a, Rng& rng) {
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { f.abs_degree() } -> std::convertible_to<unsigned>;
  { f.size() } -> std::convertible_to<Int>;
  { f.random(rng) } -> std::convertible_to<typename F::Elem>;
};

template <RingContext R>
typename R::Elem ring_pow(const R& r, typename R::Elem a, std::uint64_t n) {
  typename R::Elem out = r.one();
  while (n) {
    if (n & 1) out = r.mul(out, a);
    n >>= 1;
    if (n) a = r.mul(a, a);
  }
  return out;
}

template <RingContext R>
typename R::Elem ring_pow(const R& r, typename R::Elem a, const Int& n) {
  typename R::Elem out = r.one();
  std::size_t bits = n == 0 ? 0 : msb(n) + 1;
  for (std::size_t i = bits; i-- > 0;) {
    out = r.mul(out, out);
    if (bit_test(n, static_cast<unsigned>(i))) out = r.mul(out, a);
  }
  return out;
}

}  // namespace adelic
