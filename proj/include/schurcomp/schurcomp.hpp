#pragma once

#include "schurcomp/completion.hpp"
#include "schurcomp/errors.hpp"
#include "schurcomp/feasibility.hpp"
#include "schurcomp/hermitian.hpp"
#include "schurcomp/jframe.hpp"
#include "schurcomp/spectral.hpp"
#include "schurcomp/verify.hpp"
