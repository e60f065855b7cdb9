from stereo_vqa.services.log_setup import configure_logging
from stereo_vqa.services.presenter import ConsolePresenter, ConsoleScoringObserver

__all__ = ["ConsolePresenter", "ConsoleScoringObserver", "configure_logging"]
