#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sagin/env_model.hpp"

namespace sagin {

// One transmission leg of a routed task: a direction over a link class.
// uav_endpoint names the UAV whose radio carries this leg (-1 if none); the
// energy model charges transmit time to that battery.
struct LegDemand {
  LinkClass link = LinkClass::UserToUav;
  bool reverse = false;    // downlink direction of the same channel
  double megabits = 0.0;
  int uav_endpoint = -1;
};

// A task's complete route and resource demand, produced by the simulator's
// routing rules and consumed by allocate / certify_qos.
struct RoutedPlan {
  int task_id = 0;
  std::vector<LegDemand> uplink;    // in transmission order
  std::vector<LegDemand> downlink;  // reverse path for the result payload
  int processing_node = 0;
  double waiting_gcyc = 0.0;        // backlog queued ahead at the processing node
  double compute_gcyc = 0.0;
  double power_watts = 0.0;
};

// The demand side of one allocation round.  Task ids must be unique (each
// task routes once) and all demands positive.
struct DemandSet {
  std::vector<RoutedPlan> plans;
};

// Shares handed back by allocate.  Rates are exact multiples of the
// allocation quantum, and per resource they sum exactly to the quantized
// capacity whenever at least one task contends for it.
struct Allocation {
  struct LegShare {
    LinkClass link = LinkClass::UserToUav;
    bool reverse = false;
    double megabits = 0.0;
    double rate_mbps = 0.0;
    double delay_ms = 0.0;
    int uav_endpoint = -1;
  };
  struct TaskShare {
    int task_id = 0;
    std::vector<LegShare> uplink;
    std::vector<LegShare> downlink;
    int processing_node = 0;
    double waiting_gcyc = 0.0;
    double compute_gcyc = 0.0;
    double compute_rate_gcps = 0.0;
    double power_watts = 0.0;
  };
  std::vector<TaskShare> tasks;  // ascending task id
};

// Rates are quantized to integer multiples of 2^-30 in the resource's native
// unit so that conservation can hold bitwise in double arithmetic.
inline constexpr double kAllocationQuantum = 0x1.0p-30;

// Nearest representable capacity on the allocation grid.
double quantize_capacity(double capacity);

// Splits every contended resource: links equal-share among their contenders,
// node compute proportional to demand.  Shares are assigned by largest
// remainder (ties to the lower task id), so permuting the input only
// permutes the output.
Allocation allocate(const DemandSet& demands, const World& world);

// End-to-end latency of one allocated task: serialization at the allocated
// rate plus propagation per leg, plus queued work ahead and own compute at
// the allocated compute rate.
double plan_latency_ms(const Allocation::TaskShare& share);

// Deadline check per allocated task against the task table.  Unknown task
// ids are a contract violation.
std::vector<std::pair<int, bool>> certify_qos(const Allocation& allocation,
                                              const std::vector<Task>& tasks);

}  // namespace sagin
