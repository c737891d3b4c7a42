// Copyright 2026 The qmeasure developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QMEASURE_QMEASURE_HPP
#define QMEASURE_QMEASURE_HPP

#include "qmeasure/classical_domain.hpp"
#include "qmeasure/coevent_solver.hpp"
#include "qmeasure/document.hpp"
#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/limits.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/preclusion.hpp"
#include "qmeasure/prediction.hpp"
#include "qmeasure/quantum_measure.hpp"
#include "qmeasure/report.hpp"
#include "qmeasure/system_model.hpp"
#include "qmeasure/valuation_logic.hpp"

#endif // QMEASURE_QMEASURE_HPP
