#pragma once

#include "monoplane/data.hpp"
#include "monoplane/error.hpp"
#include "monoplane/eval.hpp"
#include "monoplane/io.hpp"
#include "monoplane/network.hpp"
#include "monoplane/perceptron.hpp"
#include "monoplane/report.hpp"
#include "monoplane/verify.hpp"
