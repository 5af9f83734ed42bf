#pragma once

#include "ufe/certificates.hpp"
#include "ufe/engine.hpp"
#include "ufe/error.hpp"
#include "ufe/uf_core.hpp"
#include "ufe/ufe_fast.hpp"
#include "ufe/ufe_log.hpp"
#include "ufe/workbench.hpp"
