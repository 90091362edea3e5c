from hpgbelyi.cli import main

# Main entry point: `python main.py enumerate ...`, `python main.py serve`
if __name__ == "__main__":
    main()
