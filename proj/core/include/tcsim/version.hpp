#pragma once

#define TCSIM_VERSION "0.1.0"
