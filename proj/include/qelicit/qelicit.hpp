// Copyright 2026 The qelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Umbrella header for the core library. JSON IO and the command harness
// (json_io.hpp, harness.hpp) also need nlohmann/json and are not included.

#include "qelicit/checks.hpp"
#include "qelicit/classical.hpp"
#include "qelicit/errors.hpp"
#include "qelicit/extended_hermitian.hpp"
#include "qelicit/extended_real.hpp"
#include "qelicit/hermitian.hpp"
#include "qelicit/markets.hpp"
#include "qelicit/measurement.hpp"
#include "qelicit/ml_scores.hpp"
#include "qelicit/optimize.hpp"
#include "qelicit/parallel.hpp"
#include "qelicit/properties.hpp"
#include "qelicit/quantum_score.hpp"
#include "qelicit/random.hpp"
#include "qelicit/registry.hpp"
#include "qelicit/tolerances.hpp"
