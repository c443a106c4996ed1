#pragma once

#include <cstdint>

namespace percolab {

// Counter-based uniform generator implementing the fixed seeding contract
// (seed, replica, edge) -> uniform. Any (replica, edge) cell can be evaluated
// independently, so replicas parallelize without shared state and a replica's
// stream never depends on evaluation order.
//
// Construction: the splitmix64 finalizer (a full-avalanche 64-bit bijection)
// is chained — once to fold the seed, once to fold the replica into a replica
// key, once per edge counter. Distinct inputs therefore map to decorrelated
// outputs; this is the standard "hash of indices" counter RNG.
namespace rng {

inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t replica_key(uint64_t seed, uint64_t replica) {
  return mix64(mix64(seed) ^ (replica * 0xda942042e4dd58b5ULL));
}

inline uint64_t cell_bits(uint64_t key, uint64_t edge) {
  return mix64(key ^ (edge * 0x9e3779b97f4a7c15ULL));
}

// Uniform in the OPEN interval (0,1): ((h >> 11) + 0.5) * 2^-53. Excluding the
// endpoints makes boundary behavior certain rather than almost-sure:
// U < p is always true at p = 1 and never at p = 0, and U <= q is impossible
// for q <= 0 (the coupling's "omega_q all-closed when q <= 0" convention).
inline double to_unit(uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(uint64_t seed, uint64_t replica, uint64_t edge) {
  return to_unit(cell_bits(replica_key(seed, replica), edge));
}

// Hot-loop helper: fixes (seed, replica) once, then evaluates edges cheaply.
struct replica_stream {
  uint64_t key;
  replica_stream(uint64_t seed, uint64_t replica) : key(replica_key(seed, replica)) {}
  double uniform(uint64_t edge) const { return to_unit(cell_bits(key, edge)); }
};

}  // namespace rng
}  // namespace percolab
