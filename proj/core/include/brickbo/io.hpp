#pragma once

// File formats. Bricks are always serialized as [a1, a2, z, d] anchors.
//
//   target shape   {"extents": [m1, m2, m3], "cells": [[i, j, k], ...]}
//   combination    {"bricks": [[a1, a2, z, d], ...]}
//   dataset line   {"class": "<label>", "bricks": [[a1, a2, z, d], ...]}
//                  (input may give "centers": [[c1, c2, z, d], ...] instead)
//   trace          {"config": {...}, "steps": [...], "final": [...]}
//   curves CSV     method,objective,seed,step,value
//   summary CSV    method,objective,step,n,mean,halfwidth
//   stats CSV      class,count,mean,std

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brickbo/assembler.hpp"
#include "brickbo/dataset.hpp"
#include "brickbo/occupiability.hpp"

namespace brickbo {

std::string target_to_json(const TargetShape& target);
TargetShape target_from_json(std::string_view text);

std::string combination_to_json(std::span<const Primitive> bricks);
/// Accepts a combination document, a dataset line, a trace (its "final"),
/// or a bare array of bricks.
Combination combination_from_json(std::string_view text);

std::string instance_to_json_line(const ShapeInstance& inst);
ShapeInstance instance_from_json_line(std::string_view line);

/// Pretty-printed trace including every configuration that shaped the run.
std::string trace_to_json(const AssemblyTrace& trace, const BoConfig& bo_cfg, const StabilityConfig& stability_cfg);
/// Reads the assembly-relevant parts back (config.assembly, steps, final).
AssemblyTrace trace_from_json(std::string_view text);

std::string curves_to_csv(std::span<const Curve> curves);
/// Per (method, objective, step): mean and 1.96 * population std across seeds.
std::string summary_to_csv(std::span<const Curve> curves);

std::string stats_to_csv(std::span<const ClassStats> rows);

}  // namespace brickbo
