#pragma once

#include "fibwalk/dynamics.hpp"
#include "fibwalk/error.hpp"
#include "fibwalk/export.hpp"
#include "fibwalk/schur.hpp"
#include "fibwalk/sequence.hpp"
#include "fibwalk/spectrum.hpp"
#include "fibwalk/sweep.hpp"
#include "fibwalk/walk.hpp"
