#include "sagin/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace sagin {
namespace {

std::int64_t to_units(double capacity) {
  return static_cast<std::int64_t>(std::llround(capacity / kAllocationQuantum));
}

double from_units(std::int64_t units) {
  return static_cast<double>(units) * kAllocationQuantum;
}

// Largest-remainder split of capacity_units proportional to weights.
// Entries are (task id, weight) in ascending task id; weights positive.
// The returned unit counts sum exactly to capacity_units.
std::vector<std::int64_t> proportional_units(std::int64_t capacity_units,
                                             const std::vector<std::pair<int, double>>& entries) {
  const std::size_t k = entries.size();
  double total = 0.0;
  for (const auto& e : entries) total += e.second;

  std::vector<std::int64_t> share(k, 0);
  std::vector<std::pair<double, std::size_t>> remainder(k);  // (-fraction, position)
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = static_cast<double>(capacity_units) * (entries[i].second / total);
    double whole = std::floor(exact);
    if (whole > static_cast<double>(capacity_units)) whole = static_cast<double>(capacity_units);
    share[i] = static_cast<std::int64_t>(whole);
    assigned += share[i];
    remainder[i] = {-(exact - whole), i};
  }

  // Floor rounding can leave a few units unassigned; hand them to the largest
  // remainders, breaking ties toward the lower task id (== lower position,
  // since entries arrive id-sorted).
  std::int64_t leftover = capacity_units - assigned;
  std::sort(remainder.begin(), remainder.end());
  for (std::size_t i = 0; leftover > 0 && i < k; ++i, --leftover) ++share[remainder[i].second];
  // leftover can only be nonzero here through floating error in `exact`;
  // spread any excess the same way so the sum stays exact.
  for (std::size_t i = 0; leftover < 0 && i < k; ++i, ++leftover) --share[k - 1 - i];
  return share;
}

struct ResourceKey {
  bool is_node = false;
  int node = -1;
  LinkClass link = LinkClass::UserToUav;
  bool reverse = false;

  bool operator<(const ResourceKey& other) const {
    return std::tie(is_node, node, link, reverse) <
           std::tie(other.is_node, other.node, other.link, other.reverse);
  }
};

}  // namespace

double quantize_capacity(double capacity) { return from_units(to_units(capacity)); }

Allocation allocate(const DemandSet& demands, const World& world) {
  // Canonical processing order: ascending task id, independent of input order.
  std::vector<const RoutedPlan*> plans;
  plans.reserve(demands.plans.size());
  for (const RoutedPlan& p : demands.plans) plans.push_back(&p);
  std::sort(plans.begin(), plans.end(),
            [](const RoutedPlan* a, const RoutedPlan* b) { return a->task_id < b->task_id; });
  for (std::size_t i = 1; i < plans.size(); ++i)
    if (plans[i]->task_id == plans[i - 1]->task_id)
      throw std::invalid_argument("allocate: duplicate task id " +
                                  std::to_string(plans[i]->task_id));

  // Gather contenders per resource.  Links weigh every contender equally;
  // nodes weigh by compute demand.
  std::map<ResourceKey, std::vector<std::pair<int, double>>> contenders;
  for (const RoutedPlan* p : plans) {
    for (const auto* legs : {&p->uplink, &p->downlink}) {
      for (const LegDemand& leg : *legs) {
        if (leg.megabits <= 0.0)
          throw std::invalid_argument("allocate: non-positive link demand for task " +
                                      std::to_string(p->task_id));
        ResourceKey key{false, -1, leg.link, leg.reverse};
        auto& list = contenders[key];
        for (const auto& e : list)
          if (e.first == p->task_id)
            throw std::invalid_argument("allocate: task " + std::to_string(p->task_id) +
                                        " listed twice on one link direction");
        list.emplace_back(p->task_id, 1.0);
      }
    }
    if (p->compute_gcyc <= 0.0)
      throw std::invalid_argument("allocate: non-positive compute demand for task " +
                                  std::to_string(p->task_id));
    contenders[ResourceKey{true, p->processing_node}].emplace_back(p->task_id, p->compute_gcyc);
  }

  // Split each resource and index the resulting rate by (resource, task).
  std::map<std::pair<ResourceKey, int>, double> rate;
  for (auto& [key, list] : contenders) {
    const double capacity = key.is_node ? world.nodes.at(key.node).compute_gcps
                                        : world.link(key.link).rate_mbps;
    const std::vector<std::int64_t> units = proportional_units(to_units(capacity), list);
    for (std::size_t i = 0; i < list.size(); ++i)
      rate[{key, list[i].first}] = from_units(units[i]);
  }

  Allocation out;
  out.tasks.reserve(plans.size());
  for (const RoutedPlan* p : plans) {
    Allocation::TaskShare share;
    share.task_id = p->task_id;
    share.processing_node = p->processing_node;
    share.waiting_gcyc = p->waiting_gcyc;
    share.compute_gcyc = p->compute_gcyc;
    share.power_watts = p->power_watts;
    share.compute_rate_gcps = rate.at({ResourceKey{true, p->processing_node}, p->task_id});
    for (const auto* legs : {&p->uplink, &p->downlink}) {
      auto& dest = legs == &p->uplink ? share.uplink : share.downlink;
      for (const LegDemand& leg : *legs) {
        const LinkSpec& spec = world.link(leg.link);
        dest.push_back({leg.link, leg.reverse, leg.megabits,
                        rate.at({ResourceKey{false, -1, leg.link, leg.reverse}, p->task_id}),
                        spec.delay_ms, leg.uav_endpoint});
      }
    }
    out.tasks.push_back(std::move(share));
  }
  return out;
}

double plan_latency_ms(const Allocation::TaskShare& share) {
  double ms = 0.0;
  for (const auto* legs : {&share.uplink, &share.downlink})
    for (const Allocation::LegShare& leg : *legs)
      ms += leg.megabits / leg.rate_mbps * 1000.0 + leg.delay_ms;
  ms += (share.waiting_gcyc + share.compute_gcyc) / share.compute_rate_gcps * 1000.0;
  return ms;
}

std::vector<std::pair<int, bool>> certify_qos(const Allocation& allocation,
                                              const std::vector<Task>& tasks) {
  std::vector<std::pair<int, bool>> result;
  result.reserve(allocation.tasks.size());
  for (const Allocation::TaskShare& share : allocation.tasks) {
    const Task* task = nullptr;
    for (const Task& t : tasks)
      if (t.id == share.task_id) {
        task = &t;
        break;
      }
    if (!task)
      throw std::invalid_argument("certify_qos: unknown task id " +
                                  std::to_string(share.task_id));
    result.emplace_back(share.task_id, plan_latency_ms(share) <= task->deadline_ms);
  }
  return result;
}

}  // namespace sagin
