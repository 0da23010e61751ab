#include "dgf/schedule.hpp"

#include <utility>

#include "dgf/errors.hpp"
#include "dgf/rng.hpp"

namespace dgf {

namespace {

void check_ids_exist(const MatrixCatalog& catalog, const std::vector<std::string>& ids,
                     const char* what) {
  for (const auto& id : ids) {
    if (!catalog.contains(id)) {
      throw PreconditionError(std::string(what) + " references unknown matrix id '" + id + "'");
    }
  }
}

void check_democratic_catalog(const MatrixCatalog& catalog) {
  for (const auto& id : catalog.ids()) {
    const InteractionMatrix& m = catalog.at(id);
    if (!is_doubly_stochastic(m) || !is_irreducible(m)) {
      throw PreconditionError("democratic mode requires every catalog matrix to be doubly "
                              "stochastic and irreducible; '" +
                              id + "' is not");
    }
  }
}

}  // namespace

void MatrixCatalog::add(InteractionMatrix matrix) {
  if (matrix.id().empty()) throw PreconditionError("catalog entries need a non-empty id");
  if (contains(matrix.id())) {
    throw PreconditionError("duplicate matrix id '" + matrix.id() + "' in catalog");
  }
  if (!order_.empty() && matrix.size() != dimension()) {
    throw PreconditionError("catalog matrices must share one dimension; '" + matrix.id() +
                            "' has n = " + std::to_string(matrix.size()) + ", catalog has n = " +
                            std::to_string(dimension()));
  }
  order_.push_back(matrix.id());
  matrices_.emplace(matrix.id(), std::move(matrix));
}

const InteractionMatrix& MatrixCatalog::at(const std::string& id) const {
  const auto it = matrices_.find(id);
  if (it == matrices_.end()) throw PreconditionError("unknown matrix id '" + id + "'");
  return it->second;
}

bool MatrixCatalog::contains(const std::string& id) const { return matrices_.count(id) > 0; }

int MatrixCatalog::dimension() const {
  return order_.empty() ? 0 : matrices_.at(order_.front()).size();
}

Schedule::Schedule(ScheduleKind kind, MatrixCatalog catalog)
    : kind_(kind), catalog_(std::move(catalog)) {}

Schedule Schedule::constant(MatrixCatalog catalog, std::string id) {
  check_ids_exist(catalog, {id}, "constant schedule");
  Schedule s(ScheduleKind::Constant, std::move(catalog));
  s.cycle_ids_ = {std::move(id)};
  return s;
}

Schedule Schedule::periodic(MatrixCatalog catalog, std::vector<std::string> ids) {
  if (ids.size() < 2) {
    throw PreconditionError("periodic schedule needs a cycle of length M >= 2");
  }
  check_ids_exist(catalog, ids, "periodic schedule");
  Schedule s(ScheduleKind::Periodic, std::move(catalog));
  s.cycle_ids_ = std::move(ids);
  return s;
}

Schedule Schedule::arbitrary_sequence(MatrixCatalog catalog, std::vector<std::string> sequence,
                                      bool democratic_mode) {
  if (sequence.empty()) throw PreconditionError("arbitrary schedule sequence must be non-empty");
  check_ids_exist(catalog, sequence, "arbitrary schedule");
  if (democratic_mode) check_democratic_catalog(catalog);
  Schedule s(ScheduleKind::Arbitrary, std::move(catalog));
  s.sequence_ = std::move(sequence);
  s.democratic_mode_ = democratic_mode;
  return s;
}

Schedule Schedule::arbitrary_random(MatrixCatalog catalog, std::vector<std::string> pool,
                                    std::uint64_t seed, bool democratic_mode) {
  if (pool.empty()) throw PreconditionError("arbitrary schedule pool must be non-empty");
  check_ids_exist(catalog, pool, "arbitrary schedule");
  if (democratic_mode) check_democratic_catalog(catalog);
  Schedule s(ScheduleKind::Arbitrary, std::move(catalog));
  s.pool_ = std::move(pool);
  s.seed_ = seed;
  s.democratic_mode_ = democratic_mode;
  return s;
}

int Schedule::period() const {
  switch (kind_) {
    case ScheduleKind::Constant:
      return 1;
    case ScheduleKind::Periodic:
      return static_cast<int>(cycle_ids_.size());
    case ScheduleKind::Arbitrary:
      return 0;
  }
  return 0;
}

std::string Schedule::id_at(int issue) const {
  if (issue < 1) throw PreconditionError("issues are numbered from 1");
  switch (kind_) {
    case ScheduleKind::Constant:
      return cycle_ids_.front();
    case ScheduleKind::Periodic:
      return cycle_ids_[(issue - 1) % cycle_ids_.size()];
    case ScheduleKind::Arbitrary:
      if (!sequence_.empty()) {
        if (issue > static_cast<int>(sequence_.size())) return {};
        return sequence_[issue - 1];
      }
      return pool_[split_seed(seed_, static_cast<std::uint64_t>(issue)) % pool_.size()];
  }
  return {};
}

const std::vector<std::string>& Schedule::cycle_ids() const {
  if (kind_ == ScheduleKind::Arbitrary) {
    throw PreconditionError("arbitrary schedules have no cycle");
  }
  return cycle_ids_;
}

std::string Schedule::description() const {
  auto join = [](const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
      if (!out.empty()) out += ",";
      out += id;
    }
    return out;
  };
  switch (kind_) {
    case ScheduleKind::Constant:
      return "constant(" + cycle_ids_.front() + ")";
    case ScheduleKind::Periodic:
      return "periodic(" + join(cycle_ids_) + ")";
    case ScheduleKind::Arbitrary:
      if (!sequence_.empty()) {
        return "arbitrary(sequence[" + std::to_string(sequence_.size()) + "])" +
               (democratic_mode_ ? "+democratic" : "");
      }
      return "arbitrary(choose{" + join(pool_) + "},seed=" + std::to_string(seed_) + ")" +
             (democratic_mode_ ? "+democratic" : "");
  }
  return {};
}

}  // namespace dgf
