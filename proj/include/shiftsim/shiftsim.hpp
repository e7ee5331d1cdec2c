// Copyright 2026 The shiftsim Authors
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

#include "error.hpp"
#include "format.hpp"
#include "gkp.hpp"
#include "ladder.hpp"
#include "logical.hpp"
#include "monte_carlo.hpp"
#include "planar.hpp"
#include "random.hpp"
#include "render.hpp"
#include "session.hpp"
#include "weyl.hpp"
#include "figures.hpp"
