# Array configurations and sweep windows of the published figures
