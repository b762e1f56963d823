// Copyright 2026 The hires-diffuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "hires/attention.hpp"
#include "hires/pipeline.hpp"
#include "hires/planner.hpp"

namespace hires {

// CSV renderings shared by the CLI and the tests. Reals use the shortest
// representation that round-trips, so output is byte-stable.

/// t,gamma_t for t = T0 .. 0.
void write_schedule_csv(std::ostream& out, const GuidanceSchedule& schedule);
/// stage,height,width,steps.
void write_plan_csv(std::ostream& out, const StagePlan& plan);
/// stage,height,width,t,guided,gamma_t,mean,var,min,max (latent statistics).
void write_trace_csv(std::ostream& out, const StageTrace& trace);

std::string schedule_csv(const GuidanceSchedule& schedule);
std::string plan_csv(const StagePlan& plan);
std::string trace_csv(const StageTrace& trace);

}  // namespace hires
