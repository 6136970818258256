////////////////////////////////////////////////////////////////////////////////
//                                                                            //
//  This file is part of factorapprox                                         //
//                                                                            //
//  Copyright 2026 factorapprox developers                                    //
//                                                                            //
//  Licensed under the Apache License, Version 2.0 (the "License");           //
//  you may not use this file except in compliance with the License.          //
//  You may obtain a copy of the License at                                   //
//                                                                            //
//      http://www.apache.org/licenses/LICENSE-2.0                            //
//                                                                            //
//  Unless required by applicable law or agreed to in writing, software       //
//  distributed under the License is distributed on an "AS IS" BASIS,         //
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  //
//  See the License for the specific language governing permissions and       //
//  limitations under the License.                                            //
//                                                                            //
////////////////////////////////////////////////////////////////////////////////

#ifndef FACTORAPPROX_HPP
#define FACTORAPPROX_HPP

#include "factorapprox/corpus.hpp"
#include "factorapprox/error.hpp"
#include "factorapprox/evaluate.hpp"
#include "factorapprox/factor_solver.hpp"
#include "factorapprox/fit.hpp"
#include "factorapprox/io.hpp"
#include "factorapprox/optimizer.hpp"
#include "factorapprox/polynomial.hpp"
#include "factorapprox/report.hpp"
#include "factorapprox/scalar.hpp"
#include "factorapprox/series.hpp"

#endif
