// Copyright 2026 The iabplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#pragma once

#include "iabplan/constraints.hpp"
#include "iabplan/deployment_io.hpp"
#include "iabplan/environment.hpp"
#include "iabplan/geometry.hpp"
#include "iabplan/instance.hpp"
#include "iabplan/netgraph.hpp"
#include "iabplan/planners.hpp"
#include "iabplan/propagation.hpp"
#include "iabplan/protocol.hpp"
#include "iabplan/resilience.hpp"
#include "iabplan/rng.hpp"
#include "iabplan/scenario.hpp"
#include "iabplan/scenario_io.hpp"
