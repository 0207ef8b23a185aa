// Copyright 2026 The swq Authors
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

#include "swq/composite.hpp"
#include "swq/cubic.hpp"
#include "swq/fano.hpp"
#include "swq/kak.hpp"
#include "swq/kernel.hpp"
#include "swq/lambda_basis.hpp"
#include "swq/matrix.hpp"
#include "swq/pauli.hpp"
#include "swq/quadrics.hpp"
#include "swq/random.hpp"
#include "swq/scan.hpp"
