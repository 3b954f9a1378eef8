#pragma once

#include "praginfo/bandit.hpp"
#include "praginfo/codes.hpp"
#include "praginfo/core.hpp"
#include "praginfo/dist.hpp"
#include "praginfo/ensemble.hpp"
#include "praginfo/ergodic.hpp"
#include "praginfo/io.hpp"
#include "praginfo/joint.hpp"
#include "praginfo/random.hpp"
#include "praginfo/rng.hpp"
#include "praginfo/verify.hpp"
