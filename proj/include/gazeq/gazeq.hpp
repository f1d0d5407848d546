// Copyright 2026 The gazeq Authors
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

#include "gazeq/analytics.hpp"
#include "gazeq/backends.hpp"
#include "gazeq/csv.hpp"
#include "gazeq/error.hpp"
#include "gazeq/evaluation.hpp"
#include "gazeq/geometry.hpp"
#include "gazeq/image.hpp"
#include "gazeq/localization.hpp"
#include "gazeq/pipeline.hpp"
#include "gazeq/prompt.hpp"
#include "gazeq/random.hpp"
#include "gazeq/session.hpp"
#include "gazeq/synth.hpp"
#include "gazeq/util.hpp"
