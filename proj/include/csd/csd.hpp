// Copyright 2026 the csd authors
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

#ifndef CSD_CSD_HPP
#define CSD_CSD_HPP

#include "csd/bench.hpp"
#include "csd/bits.hpp"
#include "csd/builders.hpp"
#include "csd/circuit.hpp"
#include "csd/clifford_circuit.hpp"
#include "csd/code_io.hpp"
#include "csd/compiler.hpp"
#include "csd/construct.hpp"
#include "csd/decoder.hpp"
#include "csd/dem.hpp"
#include "csd/distance.hpp"
#include "csd/experiments.hpp"
#include "csd/frame.hpp"
#include "csd/liftgate.hpp"
#include "csd/noise.hpp"
#include "csd/pauli.hpp"
#include "csd/rng.hpp"
#include "csd/stabilizer_code.hpp"
#include "csd/symplectic.hpp"
#include "csd/tableau_sim.hpp"

#endif
