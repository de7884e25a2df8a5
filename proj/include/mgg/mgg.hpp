#pragma once

#include "mgg/errors.hpp"
#include "mgg/operators.hpp"
#include "mgg/sympoly.hpp"
#include "mgg/radial.hpp"
#include "mgg/odeflow.hpp"
#include "mgg/solution.hpp"
#include "mgg/verify.hpp"
#include "mgg/io.hpp"
