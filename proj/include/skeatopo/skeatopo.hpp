/* Copyright 2026 The skeatopo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Umbrella header for the in-memory library (no file I/O).

#ifndef SKEATOPO_SKEATOPO_HPP
#define SKEATOPO_SKEATOPO_HPP

#include "skeatopo/bort.hpp"
#include "skeatopo/geometry.hpp"
#include "skeatopo/metrics.hpp"
#include "skeatopo/oracle.hpp"
#include "skeatopo/raster.hpp"
#include "skeatopo/skeaw.hpp"
#include "skeatopo/synth.hpp"

#endif  // SKEATOPO_SKEATOPO_HPP
