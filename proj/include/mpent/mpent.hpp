// Copyright 2026 The mpent Authors
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

#include "mpent/linalg.hpp"
#include "mpent/core_states.hpp"
#include "mpent/normal_forms.hpp"
#include "mpent/concurrence.hpp"
#include "mpent/witnesses.hpp"
#include "mpent/classification.hpp"
#include "mpent/measures.hpp"
#include "mpent/stabilizer_graph.hpp"
#include "mpent/metrology.hpp"
#include "mpent/io.hpp"
