#pragma once

#include "onebit/bridge.hpp"
#include "onebit/campaign.hpp"
#include "onebit/designers.hpp"
#include "onebit/exchange.hpp"
#include "onebit/linalg.hpp"
#include "onebit/model.hpp"
#include "onebit/qa_designer.hpp"
#include "onebit/qubo.hpp"
#include "onebit/reports.hpp"
