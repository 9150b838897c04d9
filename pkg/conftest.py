import os

# Keep test runs from appending to the process log file
os.environ.setdefault("LOG_TO_FILE", "false")
