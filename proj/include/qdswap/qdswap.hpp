// Copyright 2026 The qdswap authors
//
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

#pragma once

// Convenience header pulling in the whole library.

#include "qdswap/basis.hpp"
#include "qdswap/cascade.hpp"
#include "qdswap/config.hpp"
#include "qdswap/constants.hpp"
#include "qdswap/csv.hpp"
#include "qdswap/density_matrix.hpp"
#include "qdswap/ket.hpp"
#include "qdswap/mc.hpp"
#include "qdswap/parallel.hpp"
#include "qdswap/qd_params.hpp"
#include "qdswap/rng.hpp"
#include "qdswap/scenario.hpp"
#include "qdswap/stats.hpp"
#include "qdswap/swap.hpp"
#include "qdswap/tomography.hpp"
#include "qdswap/version.hpp"
