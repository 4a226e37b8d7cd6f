#pragma once

#include "spikit/certificate.hpp"
#include "spikit/default_remap.hpp"
#include "spikit/disarm.hpp"
#include "spikit/game.hpp"
#include "spikit/iso.hpp"
#include "spikit/json_io.hpp"
#include "spikit/lp.hpp"
#include "spikit/oracle.hpp"
#include "spikit/rational.hpp"
#include "spikit/reduction.hpp"
#include "spikit/spi.hpp"
#include "spikit/token.hpp"
