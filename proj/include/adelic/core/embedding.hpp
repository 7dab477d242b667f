#pragma once

#include <optional>

#include "adelic/core/ext_field.hpp"
#include "adelic/core/matrix.hpp"

namespace adelic {

// An F_q-algebra embedding src -> dst of extensions of the same F_q.
class Embedding {
 public:
  Embedding() = default;
  // Picks a root of src's modulus in dst deterministically from the seed.
  Embedding(ExtField src, ExtField dst, std::uint64_t seed = 0);
  Embedding(ExtField src, ExtField dst, ExtField::Elem image_of_gen);

  const ExtField& src() const { return src_; }
  const ExtField& dst() const { return dst_; }
  const ExtField::Elem& image_of_gen() const { return theta_; }

  ExtField::Elem apply(const ExtField::Elem& a) const;
  // Preimage, if b lies in the image.
  std::optional<ExtField::Elem> preimage(const ExtField::Elem& b) const;

 private:
  void build_matrix();
  ExtField src_, dst_;
  ExtField::Elem theta_;
  Matrix<Fq::Elem> M_;  // dst.k x src.k
};

// The subfield of dst of degree d over F_q, as an F_q-basis of the fixed space of Frob^d.
std::vector<ExtField::Elem> fixed_subspace(const ExtField& dst, unsigned d);

}  // namespace adelic
