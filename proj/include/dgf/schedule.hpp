#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dgf/interaction_matrix.hpp"

namespace dgf {

/// Immutable id -> interaction matrix catalog. Ids are unique and every
/// entry shares the same dimension.
class MatrixCatalog {
 public:
  MatrixCatalog() = default;

  /// Rejects empty or duplicate ids and dimension mismatches.
  void add(InteractionMatrix matrix);

  const InteractionMatrix& at(const std::string& id) const;
  bool contains(const std::string& id) const;
  int size() const { return static_cast<int>(order_.size()); }

  /// Common dimension of the entries; 0 when empty.
  int dimension() const;

  /// Ids in insertion order.
  const std::vector<std::string>& ids() const { return order_; }

 private:
  std::vector<std::string> order_;
  std::map<std::string, InteractionMatrix> matrices_;
};

enum class ScheduleKind { Constant, Periodic, Arbitrary };

/// Issue-indexed assignment of interaction matrices: a fixed topology, a
/// repeating cycle, or an arbitrary (explicit or seeded random) sequence.
class Schedule {
 public:
  static Schedule constant(MatrixCatalog catalog, std::string id);

  /// Repeating cycle of length M >= 2 (ids may repeat within the cycle).
  static Schedule periodic(MatrixCatalog catalog, std::vector<std::string> ids);

  /// Explicit issue-by-issue id sequence. With democratic_mode set, every
  /// catalog matrix must be doubly stochastic and irreducible and the
  /// trajectories are expected to approach equal social power.
  static Schedule arbitrary_sequence(MatrixCatalog catalog, std::vector<std::string> sequence,
                                     bool democratic_mode = false);

  /// Seeded uniform choice from `pool` at every issue. The realized id
  /// sequence is a pure function of (seed, issue).
  static Schedule arbitrary_random(MatrixCatalog catalog, std::vector<std::string> pool,
                                   std::uint64_t seed, bool democratic_mode = false);

  ScheduleKind kind() const { return kind_; }

  /// Cycle length: 1 for constant, M for periodic, 0 for arbitrary.
  int period() const;

  const MatrixCatalog& catalog() const { return catalog_; }
  bool democratic_mode() const { return democratic_mode_; }
  std::uint64_t seed() const { return seed_; }

  /// Matrix id applied at the given 1-based issue. Empty when an explicit
  /// sequence is exhausted.
  std::string id_at(int issue) const;

  /// Ids of one cycle (constant/periodic kinds only).
  const std::vector<std::string>& cycle_ids() const;

  /// Compact human-readable description for trajectory metadata.
  std::string description() const;

 private:
  Schedule(ScheduleKind kind, MatrixCatalog catalog);

  ScheduleKind kind_;
  MatrixCatalog catalog_;
  std::vector<std::string> cycle_ids_;   // constant/periodic
  std::vector<std::string> sequence_;    // arbitrary, explicit
  std::vector<std::string> pool_;        // arbitrary, seeded
  std::uint64_t seed_ = 0;
  bool democratic_mode_ = false;
};

}  // namespace dgf
