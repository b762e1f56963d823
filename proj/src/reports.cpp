// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "hires/reports.hpp"

#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace hires {

void write_schedule_csv(std::ostream& out, const GuidanceSchedule& schedule) {
  out << "t,gamma_t\n";
  for (int t = schedule.total_steps; t >= 0; --t) out << fmt::format("{},{}\n", t, schedule.at(t));
}

void write_plan_csv(std::ostream& out, const StagePlan& plan) {
  out << "stage,height,width,steps\n";
  for (int i = 0; i < plan.num_stages(); ++i) {
    const Shape2D s = plan.shapes[static_cast<std::size_t>(i)];
    out << fmt::format("{},{},{},{}\n", i, s.height, s.width,
                       plan.denoise_steps[static_cast<std::size_t>(i)]);
  }
}

void write_trace_csv(std::ostream& out, const StageTrace& trace) {
  out << "stage,height,width,t,guided,gamma_t,mean,var,min,max\n";
  for (const StageRecord& stage : trace.stages) {
    for (const StepRecord& r : stage.records) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", stage.stage, stage.latent_shape.height,
                         stage.latent_shape.width, r.t, r.guided ? 1 : 0, r.gamma, r.mean, r.var,
                         r.min, r.max);
    }
  }
}

std::string schedule_csv(const GuidanceSchedule& schedule) {
  std::ostringstream out;
  write_schedule_csv(out, schedule);
  return out.str();
}

std::string plan_csv(const StagePlan& plan) {
  std::ostringstream out;
  write_plan_csv(out, plan);
  return out.str();
}

std::string trace_csv(const StageTrace& trace) {
  std::ostringstream out;
  write_trace_csv(out, trace);
  return out.str();
}

}  // namespace hires
