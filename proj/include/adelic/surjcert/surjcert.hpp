#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelic/drinfeld/module.hpp"
#include "adelic/matgroups/matgroups.hpp"

namespace adelic {

struct SweepResult {
  std::vector<FrobeniusData> data;
  std::vector<std::string> bad_places;
  std::vector<std::string> anomalies;  // newton_check failures, cross-check disagreements
};

struct SweepOptions {
  int place_degree_bound = 2;
  bool cross_check = false;  // also run the torsion reconstruction on every place
  std::vector<PrimeOfA> aux_primes;  // extra primes for the Newton slope-zero check
};

// One place per Frobenius orbit: every monic irreducible P(s) of degree <= bound.
SweepResult collect_frobenius(const DrinfeldFamily& fam, const SweepOptions& opt);

struct TraceSample {
  std::string place;
  int deg_x = 0;
  RatFunc trad;
};

// b_1 b_{n-1} / b_n from f_x; throws InvariantViolation if the denominator is not a p0-power.
TraceSample trad_of(const Fq& k, const FrobeniusData& fd);
bool in_A0(const Fq& k, const RatFunc& x, const PrimeOfA& p0);

// Image of an element of A_0 in k_p (p != p0).
ExtField::Elem reduce_sample(const ExtField& kp, const Fq& k, const RatFunc& x);

// Do the images generate k_p as a ring.
bool residual_trace_surjectivity(const Fq& k, const std::vector<TraceSample>& samples, const PrimeOfA& p);
// Do the images generate k_{p1} x k_{p2} as a ring.
bool pairwise_trace_surjectivity(const Fq& k, const std::vector<TraceSample>& samples, const PrimeOfA& p1,
                                 const PrimeOfA& p2);

// A/p^m as k_p[u]/(u^m), u = pi, with k_p realized as Fq(|k_p|).
class PiAdicExpansion {
 public:
  PiAdicExpansion(const Fq& k, const PrimeOfA& p, unsigned m);
  const TRing& ring() const { return R_; }
  TRing::Elem expand(const RatFunc& x) const;
  TRing::Elem expand(const APoly& a) const;
  Fq::Elem to_residue(const APoly& a) const;  // a mod p in Fq(|k_p|)

 private:
  APoly teichmuller(const APoly& y) const;  // Teichmuller lift of y mod p, in A/p^m
  Fq k_;
  PrimeOfA p_;
  unsigned m_;
  APoly pim_;  // pi^m
  Fq K_;
  TRing R_;
  std::vector<Fq::Elem> iota_;  // F_q -> K
  Fq::Elem tau_ = 0;            // root of pi in K
};

enum class DepthMode { Full, Squares };
std::string to_string(DepthMode m);
bool depth2_generation(const Fq& k, const std::vector<TraceSample>& samples, const PrimeOfA& p, DepthMode mode);

struct FWitness {
  std::size_t index = 0;  // into the sweep data
  std::string place;
  std::optional<APoly> a;  // f(Frob_x^c) in A; empty for rank > 3
};
// f(Frob_x^c) computed in A from the companion matrix (ranks 2 and 3).
std::optional<APoly> f_value_in_A(const Fq& k, const FrobeniusData& fd, unsigned c);
// f(Frob_x^c mod p) from the roots of the reduced charpoly in a splitting field.
ExtField::Elem f_value_mod_prime(const Fq& k, const FrobeniusData& fd, unsigned c, const PrimeOfA& p);
std::optional<FWitness> f_nonvanishing_scan(const Fq& k, const std::vector<FrobeniusData>& data, unsigned c,
                                            const PrimeOfA& p);

enum class TradField { F, FSquared, Undetermined };
std::string to_string(TradField t);
bool is_square(const Fq& k, const RatFunc& x);
TradField trad_field_detect(const Fq& k, const std::vector<TraceSample>& samples);

enum class PrimeStatus { Certified, Evidence, Excluded };
std::string to_string(PrimeStatus s);

struct PrimeEntry {
  PrimeOfA p;
  std::string pi;
  int deg = 0;
  PrimeStatus status = PrimeStatus::Evidence;
  std::string exclusion;  // reason when excluded
  bool residual = false;
  bool depth2 = false;
  DepthMode mode = DepthMode::Full;
  std::optional<FWitness> witness;
  bool witness_consistent = true;  // the A-value reduces to the direct value at every other prime
};

struct PairEntry {
  std::string p1, p2;
  bool pairwise = false;
};

struct CertifyOptions {
  int place_degree_bound = 4;
  int prime_degree_bound = 2;
  unsigned c = 1;
  std::uint64_t seed = 0;
  bool cross_check = false;
  std::optional<DepthMode> mode;  // default: chosen from the detected trace field
  std::vector<PrimeOfA> exclusions;
};

struct CertificateReport {
  std::string family;
  std::uint64_t seed = 0;
  int place_degree_bound = 0;
  int prime_degree_bound = 0;
  std::size_t places_good = 0, places_bad = 0;
  PrimeOfA p0;
  TradField trad_field = TradField::Undetermined;
  DepthMode mode = DepthMode::Full;
  bool samples_in_A0 = true;
  bool newton_ok = true;
  std::vector<std::string> anomalies;
  std::vector<TraceSample> samples;
  std::vector<PrimeEntry> primes;
  std::vector<PairEntry> pairs;
  std::size_t certified() const;
};

CertificateReport certify(const DrinfeldFamily& fam, const CertifyOptions& opt);
// Stable key order; formatted with two-space indentation and a trailing newline.
std::string report_to_json(const Fq& k, const CertificateReport& rep);

std::string family_to_string(const DrinfeldFamily& fam);
std::string ratfunc_to_string(const Fq& k, const RatFunc& x);
// phi_T = s tau + tau^2 over F_3.
DrinfeldFamily reference_family();

}  // namespace adelic
