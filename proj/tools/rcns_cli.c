/* Command-line driver for the rcns shared library. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "rcns.h"

static void usage(FILE* out) {
  fprintf(out,
          "usage: rcns <subcommand> --config <path> [--out <dir>] [--format csv,json,svg]\n"
          "            [--jobs <n>]\n"
          "\n"
          "subcommands:\n"
          "  profile        build the viscous shock profile and dump it\n"
          "  simulate       raw run of the configured setup\n"
          "  stability      perturbed composite-wave stability experiment\n"
          "  relax-sweep    relaxation-limit sweep over sweep.tau_list\n"
          "  entropy-check  weighted relative-entropy balance run\n"
          "\n"
          "exit codes: 0 success, 2 validation error, 3 numeric/runtime failure\n");
}

static int exit_code_for(rcns_status status) {
  switch (status) {
    case RCNS_OK:
      return 0;
    case RCNS_ERR_INVALID_ARGUMENT:
    case RCNS_ERR_DOMAIN:
    case RCNS_ERR_CONFIG:
    case RCNS_ERR_UNSUPPORTED:
      return 2;
    default:
      return 3;
  }
}

int main(int argc, char** argv) {
  const char* subcommand = NULL;
  const char* config_path = NULL;
  const char* out_dir = NULL;
  const char* formats = "csv,json";
  int jobs = 1;
  int i;

  if (argc < 2) {
    usage(stderr);
    return 2;
  }
  if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "-h") == 0) {
    usage(stdout);
    return 0;
  }
  subcommand = argv[1];
  if (strcmp(subcommand, "profile") != 0 && strcmp(subcommand, "simulate") != 0 &&
      strcmp(subcommand, "stability") != 0 && strcmp(subcommand, "relax-sweep") != 0 &&
      strcmp(subcommand, "entropy-check") != 0) {
    fprintf(stderr, "rcns: unknown subcommand '%s'\n", subcommand);
    usage(stderr);
    return 2;
  }

  for (i = 2; i < argc; ++i) {
    if (strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
      config_path = argv[++i];
    } else if (strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (strcmp(argv[i], "--format") == 0 && i + 1 < argc) {
      formats = argv[++i];
    } else if (strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
      jobs = atoi(argv[++i]);
      if (jobs < 1) {
        fprintf(stderr, "rcns: --jobs must be a positive integer\n");
        return 2;
      }
    } else {
      fprintf(stderr, "rcns: unknown or incomplete option '%s'\n", argv[i]);
      usage(stderr);
      return 2;
    }
  }
  if (config_path == NULL) {
    fprintf(stderr, "rcns: --config is required\n");
    return 2;
  }

  {
    rcns_config* config = NULL;
    char* summary = NULL;
    rcns_status status = rcns_config_load(config_path, &config);
    if (status != RCNS_OK) {
      fprintf(stderr, "rcns: %s: %s\n", rcns_status_name(status), rcns_last_error());
      return exit_code_for(status);
    }
    status = rcns_experiment_run(config, out_dir, formats, jobs, subcommand, &summary);
    rcns_config_free(config);
    if (status != RCNS_OK) {
      fprintf(stderr, "rcns: %s: %s\n", rcns_status_name(status), rcns_last_error());
      return exit_code_for(status);
    }
    if (summary != NULL) {
      printf("%s\n", summary);
      rcns_string_free(summary);
    }
    return 0;
  }
}
