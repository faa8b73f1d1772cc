// Copyright 2026 the meanineq authors
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

#include "meanineq/analysis.hpp"
#include "meanineq/errors.hpp"
#include "meanineq/generator.hpp"
#include "meanineq/inequalities.hpp"
#include "meanineq/measure.hpp"
#include "meanineq/random.hpp"
#include "meanineq/report.hpp"
#include "meanineq/search.hpp"
#include "meanineq/serialize.hpp"
